/**
 * Object capture forms. One form per kind, generated from the static kind
 * table; client-side validation enforces exactly the rules the service does
 * (non-empty name, consistent sub-kind), so a form that passes validation
 * is expected to be accepted. Server rejections render inline anyway.
 */

import { ApiClient, ApiError, KnowledgeObject, ObjectDraft } from "./api.js";
import { describeError } from "./errors.js";
import { FeasibilityName, KindName, SubKindName, kindSpec } from "./kinds.js";

export type FormField = "name" | "subKind" | "description" | "general";

export interface FormModel {
  kind: KindName;
  subKind: SubKindName | null;
  name: string;
  description: string;
  feasibility: FeasibilityName;
  /** id of the object being edited; null while creating */
  objectId: string | null;
  errors: Partial<Record<FormField, string>>;
}

export function emptyForm(kind: KindName): FormModel {
  return {
    kind,
    subKind: null,
    name: "",
    description: "",
    feasibility: "Unassessed",
    objectId: null,
    errors: {},
  };
}

export function formForObject(object: KnowledgeObject): FormModel {
  return {
    kind: object.kind,
    subKind: object.sub_kind,
    name: object.name,
    description: object.description,
    feasibility: object.feasibility,
    objectId: object.id,
    errors: {},
  };
}

/** The service-mirroring rules; returns a copy with `errors` populated. */
export function validateForm(form: FormModel): FormModel {
  const errors: FormModel["errors"] = {};
  if (form.name.trim() === "") {
    errors.name = describeError("EmptyName", "");
  }
  const spec = kindSpec(form.kind);
  if (spec.subKinds.length === 0) {
    if (form.subKind !== null) errors.subKind = describeError("InvalidSubKind", "");
  } else if (form.subKind === null || !spec.subKinds.includes(form.subKind)) {
    errors.subKind = describeError("InvalidSubKind", "");
  }
  return { ...form, errors };
}

export function canSubmit(form: FormModel): boolean {
  return Object.keys(validateForm(form).errors).length === 0;
}

/** Which field a service error belongs on, for inline rendering. */
export function fieldForError(name: string): FormField {
  if (name === "EmptyName") return "name";
  if (name === "InvalidSubKind") return "subKind";
  return "general";
}

export function withServerError(form: FormModel, error: ApiError): FormModel {
  return {
    ...form,
    errors: { ...form.errors, [fieldForError(error.name)]: describeError(error.name, error.message) },
  };
}

export type SubmitResult =
  | { ok: true; object: KnowledgeObject }
  | { ok: false; form: FormModel };

/**
 * Validate, then create or update through the service. On success the
 * caller renders the stored record; on a domain rejection the error lands
 * inline on the offending field.
 */
export async function submitObjectForm(api: ApiClient, form: FormModel): Promise<SubmitResult> {
  const validated = validateForm(form);
  if (Object.keys(validated.errors).length > 0) {
    return { ok: false, form: validated };
  }
  try {
    if (form.objectId === null) {
      const draft: ObjectDraft = {
        kind: form.kind,
        sub_kind: form.subKind,
        name: form.name,
        description: form.description,
      };
      const object = await api.createObject(draft);
      if (form.feasibility !== "Unassessed") {
        return { ok: true, object: await api.updateObject(object.id, { feasibility: form.feasibility }) };
      }
      return { ok: true, object };
    }
    const object = await api.updateObject(form.objectId, {
      name: form.name,
      description: form.description,
      feasibility: form.feasibility,
    });
    return { ok: true, object };
  } catch (error) {
    if (error instanceof ApiError) {
      return { ok: false, form: withServerError(validated, error) };
    }
    throw error;
  }
}
