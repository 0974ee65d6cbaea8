/**
 * Every documented service error name has a user-facing message; anything
 * unmapped renders raw (never swallowed).
 */

export const ERROR_MESSAGES: Record<string, string> = {
  EmptyName: "Name must not be empty.",
  InvalidSubKind: "This kind needs a valid sub-kind selection.",
  UnknownObject: "That object no longer exists.",
  UnknownRelation: "That relation no longer exists.",
  UnknownDocument: "That document no longer exists.",
  IllegalEndpoints: "These two objects cannot be linked with that relation.",
  DuplicateRelation: "That link already exists.",
  CycleRejected: "Refused: this link would create a cycle in the tree.",
  IllegalTransition: "That state change is not allowed from the current state.",
  HasRelations: "Still linked: remove or cascade its relations first.",
  InvalidSpan: "The span start must lie before its end.",
  OutOfBounds: "The span falls outside the document text.",
  BoundarySplit: "The span must not cut through a character.",
  ZeroDepth: "Diagram depth must be at least 1.",
  InvalidTreeRelation: "Trees exist only for IsA and IsComposedOf.",
  UnknownRule: "No such lint rule.",
  InvalidKB: "The knowledge base has structural violations.",
  ParseError: "The file could not be parsed.",
  SchemaViolation: "The file parsed but its content is illegal.",
  ValidationError: "The request was malformed.",
};

/** "ErrorName: friendly text" — or the raw name and message when unmapped. */
export function describeError(name: string, message: string): string {
  const friendly = ERROR_MESSAGES[name];
  if (friendly) return `${name}: ${friendly}`;
  return message ? `${name}: ${message}` : name;
}
