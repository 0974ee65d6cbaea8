/**
 * Split document text into segments so fragment spans can be highlighted.
 * Spans arrive as character offsets (the service converts from its byte
 * anchors), so plain string slicing is safe here.
 */

import { Fragment } from "./api.js";

export interface Segment {
  text: string;
  fragmentIds: string[];
  highlighted: boolean;
}

export function segmentDocument(
  text: string,
  fragments: Fragment[],
  highlightFragmentId?: string,
): Segment[] {
  const chars = Array.from(text);
  const cuts = new Set<number>([0, chars.length]);
  for (const fragment of fragments) {
    cuts.add(Math.min(fragment.char_start, chars.length));
    cuts.add(Math.min(fragment.char_end, chars.length));
  }
  const ordered = [...cuts].sort((a, b) => a - b);

  const segments: Segment[] = [];
  for (let i = 0; i + 1 < ordered.length; i += 1) {
    const start = ordered[i]!;
    const end = ordered[i + 1]!;
    if (start === end) continue;
    const covering = fragments
      .filter((f) => f.char_start <= start && end <= f.char_end)
      .map((f) => f.id)
      .sort();
    segments.push({
      text: chars.slice(start, end).join(""),
      fragmentIds: covering,
      highlighted: highlightFragmentId !== undefined && covering.includes(highlightFragmentId),
    });
  }
  return segments;
}
