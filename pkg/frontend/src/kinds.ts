/**
 * Static description of the object kinds and their form fields. Forms are
 * generated from this table, so a schema-level change only touches data.
 */

export type KindName =
  | "Illustration"
  | "Constraint"
  | "Activity"
  | "Rule"
  | "Resource"
  | "Entity"
  | "Function";

export type SubKindName =
  | "Product"
  | "Representation"
  | "Domain"
  | "Expert"
  | "Reasoning"
  | "Structural"
  | "Functional";

export type StateName = "NotTreated" | "InProgress" | "Implemented" | "Dismissed";

export type FeasibilityName =
  | "Unassessed"
  | "Codable"
  | "NeedsAdditionalAlgorithm"
  | "NotCodable";

export type RelationKindName =
  | "IsA"
  | "IsComposedOf"
  | "HasConstraint"
  | "HasRule"
  | "HasFunction"
  | "UsesResource"
  | "Realizes"
  | "Covers"
  | "Illustrates";

export interface KindSpec {
  kind: KindName;
  subKinds: readonly SubKindName[];
  hint: string;
}

export const KIND_SPECS: readonly KindSpec[] = [
  { kind: "Illustration", subKinds: [], hint: "comments, past experiences, worked cases" },
  { kind: "Constraint", subKinds: ["Product", "Representation"], hint: "limits on the product or on how knowledge is presented" },
  { kind: "Activity", subKinds: ["Domain", "Reasoning"], hint: "what the process does vs the design step that decides it" },
  { kind: "Rule", subKinds: ["Domain", "Expert"], hint: "generic domain rules vs rules tied to one expert" },
  { kind: "Resource", subKinds: [], hint: "tools and machines used to realize geometry" },
  { kind: "Entity", subKinds: ["Structural", "Functional"], hint: "features and components of the product" },
  { kind: "Function", subKinds: [], hint: "the objective of a reasoning activity" },
] as const;

export const STATES: readonly StateName[] = [
  "NotTreated",
  "InProgress",
  "Implemented",
  "Dismissed",
];

export const FEASIBILITIES: readonly FeasibilityName[] = [
  "Unassessed",
  "Codable",
  "NeedsAdditionalAlgorithm",
  "NotCodable",
];

export const RELATION_KINDS: readonly RelationKindName[] = [
  "IsA",
  "IsComposedOf",
  "HasConstraint",
  "HasRule",
  "HasFunction",
  "UsesResource",
  "Realizes",
  "Covers",
  "Illustrates",
];

export const TREE_RELATIONS = ["IsA", "IsComposedOf"] as const;
export type TreeRelationName = (typeof TREE_RELATIONS)[number];

export function kindSpec(kind: KindName): KindSpec {
  const spec = KIND_SPECS.find((s) => s.kind === kind);
  if (!spec) throw new Error(`unknown kind ${kind}`);
  return spec;
}

/** Human badge text for a lifecycle state ("NotTreated" -> "not treated"). */
export function stateBadge(state: StateName): string {
  return state.replace(/([a-z])([A-Z])/g, "$1 $2").toLowerCase();
}
