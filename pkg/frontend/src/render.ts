/**
 * Pure HTML-string renderers for every view model. Keeping these free of
 * DOM access makes them directly testable; main.ts only injects the result
 * and wires events via data attributes.
 */

import { DiagramView, ForestNode, ForestView } from "./api.js";
import { DashboardViewModel } from "./dashboard.js";
import { FormField, FormModel } from "./forms.js";
import { FEASIBILITIES, KIND_SPECS, kindSpec, stateBadge } from "./kinds.js";
import { DocumentViewModel, NotFoundModel, ObjectDetailModel } from "./navigation.js";

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function inlineError(form: FormModel, field: FormField): string {
  const message = form.errors[field];
  if (!message) return "";
  return `<p class="error" data-field="${field}">${escapeHtml(message)}</p>`;
}

export function renderForm(form: FormModel): string {
  const spec = kindSpec(form.kind);
  const subKindSelector =
    spec.subKinds.length === 0
      ? ""
      : `<label>sub-kind
           <select name="subKind" data-field="subKind">
             <option value=""${form.subKind === null ? " selected" : ""}>choose...</option>
             ${spec.subKinds
               .map(
                 (sub) =>
                   `<option value="${sub}"${form.subKind === sub ? " selected" : ""}>${sub}</option>`,
               )
               .join("")}
           </select>
         </label>
         ${inlineError(form, "subKind")}`;
  return `<form class="object-form" data-kind="${form.kind}">
    <h2>${form.objectId ? `Edit ${escapeHtml(form.objectId)}` : `New ${form.kind}`}</h2>
    <p class="hint">${escapeHtml(spec.hint)}</p>
    <label>name
      <input name="name" data-field="name" value="${escapeHtml(form.name)}">
    </label>
    ${inlineError(form, "name")}
    ${subKindSelector}
    <label>description
      <textarea name="description" data-field="description">${escapeHtml(form.description)}</textarea>
    </label>
    ${inlineError(form, "description")}
    <label>feasibility
      <select name="feasibility" data-field="feasibility">
        ${FEASIBILITIES.map(
          (f) => `<option value="${f}"${form.feasibility === f ? " selected" : ""}>${f}</option>`,
        ).join("")}
      </select>
    </label>
    ${inlineError(form, "general")}
    <button type="submit">save</button>
  </form>`;
}

export function renderDashboard(model: DashboardViewModel): string {
  const stateRows = model.stateRows
    .map(
      (row) => `<tr data-state="${row.state}">
        <td>${row.label}</td>
        <td class="count">${row.count}</td>
        <td><div class="bar" style="width:${row.barPercent.toFixed(1)}%"></div></td>
      </tr>`,
    )
    .join("");
  const coverageRows = model.coverageRows
    .map(
      (row) => `<tr data-activity="${row.activityId}">
        <td><a href="#" data-open-object="${row.activityId}">${row.activityId}</a></td>
        <td class="count">${row.implemented}/${row.denominator}</td>
        <td><div class="bar" style="width:${row.barPercent.toFixed(1)}%"></div></td>
        <td class="percent">${row.percentText}</td>
      </tr>`,
    )
    .join("");
  return `<section class="dashboard">
    <h2>Indicators</h2>
    <p class="findings">
      <span class="error-count">${model.errorCount}</span> errors,
      <span class="warning-count">${model.warningCount}</span> warnings
    </p>
    <h3>States (${model.totalObjects} objects)</h3>
    <table class="states">${stateRows}</table>
    <h3>Automation coverage</h3>
    <table class="coverage">${coverageRows}</table>
    <p class="project">project: <span class="percent">${model.projectPercentText}</span></p>
  </section>`;
}

function renderForestNode(node: ForestNode, forest: ForestView): string {
  const object = forest.objects[node.object_id];
  const label = object
    ? `${escapeHtml(object.name)} <span class="badge">${stateBadge(object.state)}</span>`
    : escapeHtml(node.object_id);
  const children = node.children.length
    ? `<ul>${node.children.map((child) => renderForestNode(child, forest)).join("")}</ul>`
    : "";
  return `<li><a href="#" data-open-object="${node.object_id}">${label}</a>${children}</li>`;
}

export function renderForest(forest: ForestView): string {
  const notices = forest.notices
    .map(
      (n) =>
        `<li class="notice">${n.object_id} kept under ${n.chosen_parent_id}; ` +
        `other parents: ${n.other_parent_ids.join(", ")}</li>`,
    )
    .join("");
  return `<section class="forest">
    <h2>${forest.kind} / ${forest.relation}</h2>
    <ul class="tree">${forest.roots.map((root) => renderForestNode(root, forest)).join("")}</ul>
    ${notices ? `<ul class="notices">${notices}</ul>` : ""}
  </section>`;
}

export function renderDiagram(diagram: DiagramView): string {
  const nodes = diagram.node_ids
    .map((id) => {
      const object = diagram.objects[id];
      const label = object ? `${escapeHtml(object.name)} (${object.kind})` : escapeHtml(id);
      const rootClass = id === diagram.root_id ? " root" : "";
      return `<li class="node${rootClass}"><a href="#" data-open-object="${id}">${label}</a></li>`;
    })
    .join("");
  const edges = diagram.edge_ids
    .map((id) => {
      const edge = diagram.relations[id];
      if (!edge) return "";
      return `<li class="edge">${edge.source_id} -[${edge.kind}]-&gt; ${edge.target_id}</li>`;
    })
    .join("");
  return `<section class="diagram">
    <h2>Around ${diagram.root_id} (depth ${diagram.depth})</h2>
    <ul class="nodes">${nodes}</ul>
    <ul class="edges">${edges}</ul>
  </section>`;
}

export function renderObjectDetail(model: ObjectDetailModel): string {
  const object = model.object;
  const kindText = object.sub_kind ? `${object.kind}/${object.sub_kind}` : object.kind;
  const neighborItems = model.neighbors
    .map(
      ({ relation, object: other }) =>
        `<li>${relation.kind}: <a href="#" data-open-object="${other.id}">${escapeHtml(other.name)}</a></li>`,
    )
    .join("");
  const fragmentItems = model.fragments
    .map(
      ({ fragment, documentTitle }) =>
        `<li><a href="#" class="fragment-badge" data-open-fragment="${fragment.id}" ` +
        `data-document="${fragment.document_id}">${escapeHtml(documentTitle)} ` +
        `[${fragment.start}:${fragment.end}]</a> &quot;${escapeHtml(fragment.excerpt)}&quot;</li>`,
    )
    .join("");
  return `<section class="object-detail" data-id="${object.id}">
    <h2>${escapeHtml(object.name)}</h2>
    <p class="kind">${kindText}</p>
    <p><span class="badge state">${stateBadge(object.state)}</span>
       <span class="badge feasibility">${object.feasibility}</span></p>
    <p class="description">${escapeHtml(object.description) || "<em>no description</em>"}</p>
    <h3>Links</h3>
    <ul class="neighbors">${neighborItems || "<li><em>none</em></li>"}</ul>
    <h3>Evidence</h3>
    <ul class="fragments">${fragmentItems || "<li><em>not anchored</em></li>"}</ul>
  </section>`;
}

export function renderDocument(model: DocumentViewModel): string {
  const segments = model.segments
    .map((segment, index) => {
      const classes = [
        segment.fragmentIds.length ? "anchored" : "",
        segment.highlighted ? "highlight" : "",
      ]
        .filter(Boolean)
        .join(" ");
      const anchor = model.scrollTo === index ? ' id="scroll-target"' : "";
      return classes
        ? `<mark class="${classes}"${anchor}>${escapeHtml(segment.text)}</mark>`
        : escapeHtml(segment.text);
    })
    .join("");
  return `<section class="document">
    <h2>${escapeHtml(model.document.title)}</h2>
    <pre class="source-text">${segments}</pre>
  </section>`;
}

export function renderNotFound(model: NotFoundModel): string {
  return `<section class="not-found"><p>${escapeHtml(model.message)}</p></section>`;
}

export function renderServiceUnreachable(detail: string): string {
  return `<div class="banner offline">service unreachable: ${escapeHtml(detail)}</div>`;
}

export function renderKindMenu(): string {
  return KIND_SPECS.map(
    (spec) => `<button data-new-object="${spec.kind}">${spec.kind}</button>`,
  ).join("");
}
