/**
 * Navigation state and the per-view loaders. A view is rendered entirely
 * from what its loader fetched; stale ids resolve to the not-found view
 * instead of crashing.
 */

import {
  ApiClient,
  ApiError,
  DiagramView,
  Document,
  ForestView,
  Fragment,
  KnowledgeObject,
  NeighborPair,
} from "./api.js";
import { describeError } from "./errors.js";
import { KindName, TreeRelationName } from "./kinds.js";
import { Segment, segmentDocument } from "./highlight.js";

export type View =
  | { view: "dashboard" }
  | { view: "forest"; kind: KindName; relation: TreeRelationName }
  | { view: "diagram"; root: string; depth: number }
  | { view: "object"; id: string }
  | { view: "document"; id: string; highlightFragmentId?: string }
  | { view: "form"; kind: KindName; objectId?: string };

export interface NavigationState {
  current: View;
  selection: string | null;
}

export function initialNavigation(): NavigationState {
  return { current: { view: "dashboard" }, selection: null };
}

export function navigate(state: NavigationState, view: View): NavigationState {
  const selection =
    view.view === "object" ? view.id : view.view === "diagram" ? view.root : state.selection;
  return { current: view, selection };
}

// -- loaded view models -------------------------------------------------------

export interface ObjectDetailModel {
  object: KnowledgeObject;
  neighbors: NeighborPair[];
  fragments: { fragment: Fragment; documentTitle: string }[];
}

export interface DocumentViewModel {
  document: Document;
  fragments: Fragment[];
  segments: Segment[];
  /** index of the first highlighted segment, for scroll-into-view */
  scrollTo: number | null;
}

export interface NotFoundModel {
  message: string;
}

export async function loadObjectDetail(
  api: ApiClient,
  id: string,
): Promise<ObjectDetailModel | NotFoundModel> {
  try {
    const object = await api.getObject(id);
    const { neighbors } = await api.neighbors(id);
    const fragments: ObjectDetailModel["fragments"] = [];
    if (object.fragment_ids.length > 0) {
      const { documents } = await api.listDocuments();
      for (const doc of documents) {
        const listed = await api.listFragments(doc.id);
        for (const fragment of listed.fragments) {
          if (object.fragment_ids.includes(fragment.id)) {
            fragments.push({ fragment, documentTitle: doc.title });
          }
        }
      }
    }
    return { object, neighbors, fragments };
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      return { message: describeError(error.name, error.message) };
    }
    throw error;
  }
}

export async function loadForest(
  api: ApiClient,
  kind: KindName,
  relation: TreeRelationName,
): Promise<ForestView> {
  return api.forest(kind, relation);
}

export async function loadDiagram(
  api: ApiClient,
  root: string,
  depth: number,
): Promise<DiagramView | NotFoundModel> {
  try {
    return await api.diagram(root, depth);
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      return { message: describeError(error.name, error.message) };
    }
    throw error;
  }
}

export async function loadDocument(
  api: ApiClient,
  id: string,
  highlightFragmentId?: string,
): Promise<DocumentViewModel | NotFoundModel> {
  try {
    const document = await api.getDocument(id);
    const { fragments } = await api.listFragments(id);
    const segments = segmentDocument(document.text, fragments, highlightFragmentId);
    let scrollTo: number | null = null;
    segments.forEach((segment, index) => {
      if (segment.highlighted && scrollTo === null) scrollTo = index;
    });
    return { document, fragments, segments, scrollTo };
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      return { message: describeError(error.name, error.message) };
    }
    throw error;
  }
}

export function isNotFound(model: object): model is NotFoundModel {
  return "message" in model && Object.keys(model).length === 1;
}
