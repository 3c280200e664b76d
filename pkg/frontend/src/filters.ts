import { DIMENSIONS, isDimension } from "./types.js";
import type { Dimension, Mode } from "./types.js";

export interface Range {
  lo: number;
  hi: number;
}

/** The complete filter state of the dashboard: active brand, score mode,
 * and at most one inclusive score range per dimension. Serializes to the
 * server's `filters=` parameter and round-trips through the URL query
 * string losslessly. */
export interface FilterState {
  brand: string;
  mode: Mode;
  ranges: Partial<Record<Dimension, Range>>;
}

export function emptyState(brand: string, mode: Mode = "ica"): FilterState {
  return { brand, mode, ranges: {} };
}

/** Shortest decimal form that parses back to the same float, so a state
 * survives URL round-trips bit-exactly ("0.6", "1", "0.35"). */
export function formatBound(x: number): string {
  if (!Number.isFinite(x) || x < 0 || x > 1) {
    throw new Error(`bound ${x} outside [0, 1]`);
  }
  return String(x);
}

/** Serialize the active ranges as dim:lo:hi predicates joined by commas,
 * in fixed dimension order. Empty string when no range is set. */
export function filtersParam(state: FilterState): string {
  const parts: string[] = [];
  for (const dim of DIMENSIONS) {
    const r = state.ranges[dim];
    if (r) parts.push(`${dim}:${formatBound(r.lo)}:${formatBound(r.hi)}`);
  }
  return parts.join(",");
}

export function parseFiltersParam(raw: string): Partial<Record<Dimension, Range>> {
  const ranges: Partial<Record<Dimension, Range>> = {};
  for (const item of raw.split(",")) {
    const trimmed = item.trim();
    if (!trimmed) continue;
    const parts = trimmed.split(":");
    if (parts.length !== 3) throw new Error(`bad filter ${trimmed}, expected dim:lo:hi`);
    const [name, loRaw, hiRaw] = parts as [string, string, string];
    if (!isDimension(name)) throw new Error(`unknown dimension ${name}`);
    if (ranges[name]) throw new Error(`duplicate predicate for ${name}`);
    const lo = Number(loRaw);
    const hi = Number(hiRaw);
    if (!Number.isFinite(lo) || !Number.isFinite(hi)) {
      throw new Error(`non-numeric bound in filter ${trimmed}`);
    }
    if (!(0 <= lo && lo <= hi && hi <= 1)) {
      throw new Error(`bad range [${lo}, ${hi}] for ${name}`);
    }
    ranges[name] = { lo, hi };
  }
  return ranges;
}

/** Encode the full state as a URL query string (no leading "?"). Colons and
 * commas are query-safe, so the filters value stays readable. */
export function stateToQuery(state: FilterState): string {
  const parts = [
    `brand=${encodeURIComponent(state.brand)}`,
    `mode=${state.mode}`,
  ];
  const filters = filtersParam(state);
  if (filters) parts.push(`filters=${filters}`);
  return parts.join("&");
}

export function stateFromQuery(query: string, fallbackBrand = ""): FilterState {
  const raw = query.startsWith("?") ? query.slice(1) : query;
  let brand = fallbackBrand;
  let mode: Mode = "ica";
  let ranges: Partial<Record<Dimension, Range>> = {};
  for (const pair of raw.split("&")) {
    if (!pair) continue;
    const eq = pair.indexOf("=");
    const key = eq < 0 ? pair : pair.slice(0, eq);
    const value = eq < 0 ? "" : decodeURIComponent(pair.slice(eq + 1));
    if (key === "brand" && value) brand = value;
    else if (key === "mode" && (value === "ica" || value === "independent")) mode = value;
    else if (key === "filters") ranges = parseFiltersParam(value);
  }
  return { brand, mode, ranges };
}

/** Snap a dragged range to histogram bin edges: each endpoint moves to its
 * nearest edge, and a collapsed result is widened to cover one full bin,
 * matching selection of whole bar segments. */
export function snapRange(lo: number, hi: number, edges: readonly number[]): Range {
  if (edges.length < 2) return { lo, hi };
  const nearest = (x: number): number => {
    let best = 0;
    for (let i = 1; i < edges.length; i++) {
      if (Math.abs(edges[i]! - x) < Math.abs(edges[best]! - x)) best = i;
    }
    return best;
  };
  let i = nearest(lo);
  let j = nearest(hi);
  if (i > j) [i, j] = [j, i];
  if (i === j) {
    if (j < edges.length - 1) j += 1;
    else i -= 1;
  }
  return { lo: edges[i]!, hi: edges[j]! };
}

export function clampUnit(x: number): number {
  return Math.min(1, Math.max(0, x));
}
