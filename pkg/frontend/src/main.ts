/**
 * Browser entry point: wires the pure renderers to the DOM, routes clicks,
 * and keeps the dashboard polling. No authoritative state lives here; every
 * render round-trips through the service.
 */

import { ApiClient, ApiError } from "./api.js";
import { DashboardViewModel, startPolling } from "./dashboard.js";
import { emptyForm, formForObject, FormModel, submitObjectForm } from "./forms.js";
import { KindName, TREE_RELATIONS, TreeRelationName, KIND_SPECS } from "./kinds.js";
import {
  initialNavigation,
  isNotFound,
  loadDiagram,
  loadDocument,
  loadForest,
  loadObjectDetail,
  navigate,
  NavigationState,
  View,
} from "./navigation.js";
import {
  renderDashboard,
  renderDiagram,
  renderDocument,
  renderForest,
  renderForm,
  renderKindMenu,
  renderNotFound,
  renderObjectDetail,
  renderServiceUnreachable,
} from "./render.js";

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get("service") ?? "http://127.0.0.1:8601");
const pollIntervalMs = Number(params.get("poll") ?? "3000");

let navigation: NavigationState = initialNavigation();
let activeForm: FormModel | null = null;
let lastDashboard: DashboardViewModel | null = null;

const content = document.getElementById("content")!;
const banner = document.getElementById("banner")!;
const menu = document.getElementById("menu")!;

function setView(view: View): void {
  navigation = navigate(navigation, view);
  void renderCurrent();
}

async function renderCurrent(): Promise<void> {
  const view = navigation.current;
  try {
    if (view.view === "dashboard") {
      content.innerHTML = lastDashboard
        ? renderDashboard(lastDashboard)
        : "<p>loading indicators...</p>";
    } else if (view.view === "forest") {
      content.innerHTML = renderForest(await loadForest(api, view.kind, view.relation));
    } else if (view.view === "diagram") {
      const model = await loadDiagram(api, view.root, view.depth);
      content.innerHTML = isNotFound(model) ? renderNotFound(model) : renderDiagram(model);
    } else if (view.view === "object") {
      const model = await loadObjectDetail(api, view.id);
      content.innerHTML = isNotFound(model) ? renderNotFound(model) : renderObjectDetail(model);
    } else if (view.view === "document") {
      const model = await loadDocument(api, view.id, view.highlightFragmentId);
      content.innerHTML = isNotFound(model) ? renderNotFound(model) : renderDocument(model);
      document.getElementById("scroll-target")?.scrollIntoView({ block: "center" });
    } else if (view.view === "form") {
      activeForm =
        view.objectId === undefined
          ? emptyForm(view.kind)
          : formForObject(await api.getObject(view.objectId));
      content.innerHTML = renderForm(activeForm);
    }
    banner.innerHTML = "";
  } catch (error) {
    if (error instanceof ApiError) {
      content.innerHTML = renderNotFound({ message: `${error.name}: ${error.message}` });
    } else {
      banner.innerHTML = renderServiceUnreachable(String(error));
    }
  }
}

function readForm(formElement: HTMLFormElement): void {
  if (!activeForm) return;
  const data = new FormData(formElement);
  const subKindRaw = data.get("subKind");
  activeForm = {
    ...activeForm,
    name: String(data.get("name") ?? ""),
    description: String(data.get("description") ?? ""),
    subKind: subKindRaw ? (String(subKindRaw) as FormModel["subKind"]) : null,
    feasibility: String(data.get("feasibility") ?? "Unassessed") as FormModel["feasibility"],
  };
}

document.addEventListener("submit", (event) => {
  const formElement = event.target as HTMLFormElement;
  if (!formElement.classList.contains("object-form")) return;
  event.preventDefault();
  readForm(formElement);
  if (!activeForm) return;
  void submitObjectForm(api, activeForm).then((result) => {
    if (result.ok) {
      setView({ view: "object", id: result.object.id });
    } else {
      activeForm = result.form;
      content.innerHTML = renderForm(activeForm);
    }
  });
});

document.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest("[data-open-object],[data-open-fragment],[data-new-object],[data-open-forest],[data-open-dashboard]") as HTMLElement | null;
  if (!target) return;
  event.preventDefault();
  if (target.dataset.openObject) {
    setView({ view: "object", id: target.dataset.openObject });
  } else if (target.dataset.openFragment) {
    setView({
      view: "document",
      id: target.dataset.document!,
      highlightFragmentId: target.dataset.openFragment,
    });
  } else if (target.dataset.newObject) {
    setView({ view: "form", kind: target.dataset.newObject as KindName });
  } else if (target.dataset.openForest) {
    const [kind, relation] = target.dataset.openForest.split(":");
    setView({ view: "forest", kind: kind as KindName, relation: relation as TreeRelationName });
  } else if (target.dataset.openDashboard !== undefined) {
    setView({ view: "dashboard" });
  }
});

function buildMenu(): void {
  const forestButtons = KIND_SPECS.map((spec) =>
    TREE_RELATIONS.map(
      (relation) =>
        `<button data-open-forest="${spec.kind}:${relation}">${spec.kind} ${relation}</button>`,
    ).join(""),
  ).join("");
  menu.innerHTML = `<button data-open-dashboard>dashboard</button>
    <span class="group">new:</span>${renderKindMenu()}
    <span class="group">trees:</span>${forestButtons}`;
}

buildMenu();
startPolling(
  api,
  (model) => {
    lastDashboard = model;
    if (navigation.current.view === "dashboard") {
      content.innerHTML = renderDashboard(model);
    }
  },
  (error) => {
    banner.innerHTML = renderServiceUnreachable(String(error));
  },
  pollIntervalMs,
);
void renderCurrent();
