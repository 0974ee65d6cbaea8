import { describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import { dashboardViewModel } from "../src/dashboard.js";
import { ERROR_MESSAGES, describeError } from "../src/errors.js";
import { emptyForm, withServerError, validateForm } from "../src/forms.js";
import { segmentDocument } from "../src/highlight.js";
import {
  renderDashboard,
  renderDocument,
  renderForest,
  renderForm,
  renderNotFound,
  escapeHtml,
} from "../src/render.js";

describe("error mapping", () => {
  it("has a friendly message for every documented service error", () => {
    const documented = [
      "EmptyName", "InvalidSubKind", "UnknownObject", "UnknownRelation",
      "UnknownDocument", "IllegalEndpoints", "DuplicateRelation", "CycleRejected",
      "IllegalTransition", "HasRelations", "InvalidSpan", "OutOfBounds",
      "BoundarySplit", "ZeroDepth", "InvalidTreeRelation", "UnknownRule",
      "InvalidKB", "ParseError", "SchemaViolation",
    ];
    for (const name of documented) {
      expect(ERROR_MESSAGES[name], name).toBeTruthy();
      expect(describeError(name, "")).toContain(name);
    }
  });

  it("renders unmapped errors raw, never silently", () => {
    expect(describeError("BrandNewError", "something odd")).toBe("BrandNewError: something odd");
    expect(describeError("BrandNewError", "")).toBe("BrandNewError");
  });
});

describe("form rendering", () => {
  it("shows inline errors against their field", () => {
    const form = withServerError(
      { ...emptyForm("Constraint"), name: "limit", subKind: "Product" },
      new ApiError("InvalidSubKind", "nope", 400),
    );
    const html = renderForm(form);
    expect(html).toContain('data-field="subKind"');
    expect(html).toContain("InvalidSubKind");
  });

  it("renders a sub-kind selector only for kinds that take one", () => {
    expect(renderForm(emptyForm("Entity"))).toContain('name="subKind"');
    expect(renderForm(emptyForm("Resource"))).not.toContain('name="subKind"');
  });

  it("escapes hostile input", () => {
    const form = validateForm({ ...emptyForm("Resource"), name: '<img src=x onerror="pwn()">' });
    const html = renderForm(form);
    expect(html).not.toContain("<img");
    expect(html).toContain("&lt;img");
  });
});

describe("dashboard rendering", () => {
  it("shows the numbers it was given", () => {
    const model = dashboardViewModel({
      states: {
        total: 4,
        histogram: { NotTreated: 4, InProgress: 0, Implemented: 0, Dismissed: 0 },
        by_kind: {},
      },
      coverage: {
        per_activity: [
          {
            activity_id: "o-00000009",
            covered_total: 4,
            implemented: 2,
            dismissed: 1,
            ratio: { numerator: 2, denominator: 3, percent: 66.7 },
          },
        ],
        project_ratio: { numerator: 2, denominator: 3, percent: 66.7 },
        state_histogram: { NotTreated: 4, InProgress: 0, Implemented: 0, Dismissed: 0 },
      },
      lint: { findings: [], counts: { Error: 1, Warning: 3 } },
    });
    const html = renderDashboard(model);
    expect(html).toContain("66.7%");
    expect(html).toContain('<span class="error-count">1</span>');
    expect(html).toContain('<span class="warning-count">3</span>');
    expect(html).toContain('data-state="NotTreated"');
    expect(html).toContain('width:100.0%');
  });
});

describe("tree and document rendering", () => {
  it("renders a three-node chain as nested lists", () => {
    const html = renderForest({
      kind: "Entity",
      relation: "IsA",
      roots: [
        {
          object_id: "o-3",
          children: [{ object_id: "o-2", children: [{ object_id: "o-1", children: [] }] }],
        },
      ],
      notices: [],
      objects: {
        "o-1": stub("o-1", "small pocket"),
        "o-2": stub("o-2", "pocket"),
        "o-3": stub("o-3", "feature"),
      },
    });
    expect(html.match(/<li>/g)?.length).toBe(3);
    expect(html.indexOf("feature")).toBeLessThan(html.indexOf("pocket"));
    expect(html).toContain('data-open-object="o-1"');
  });

  it("marks highlighted fragment segments for scrolling", () => {
    const segments = segmentDocument("abcdef", [fragment("f-1", 2, 4)], "f-1");
    const html = renderDocument({
      document: { id: "d-1", title: "spec", text: "abcdef", checksum: "", imported_at: "" },
      fragments: [fragment("f-1", 2, 4)],
      segments,
      scrollTo: segments.findIndex((s) => s.highlighted),
    });
    expect(html).toContain('id="scroll-target"');
    expect(html).toContain("<mark");
    expect(html).toContain("cd");
  });

  it("not-found view renders the message", () => {
    expect(renderNotFound({ message: "UnknownObject: gone" })).toContain("UnknownObject");
  });
});

describe("escapeHtml", () => {
  it("escapes the four metacharacters", () => {
    expect(escapeHtml('<a href="x">&</a>')).toBe("&lt;a href=&quot;x&quot;&gt;&amp;&lt;/a&gt;");
  });
});

function stub(id: string, name: string) {
  return {
    id,
    kind: "Entity" as const,
    sub_kind: "Structural" as const,
    name,
    description: "",
    state: "NotTreated" as const,
    feasibility: "Unassessed" as const,
    fragment_ids: [],
    created_at: "",
    updated_at: "",
  };
}

function fragment(id: string, charStart: number, charEnd: number) {
  return {
    id,
    document_id: "d-1",
    start: charStart,
    end: charEnd,
    excerpt: "",
    char_start: charStart,
    char_end: charEnd,
  };
}
