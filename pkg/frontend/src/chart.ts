/**
 * Deterministic SVG line chart for energy-vs-deadline sweep results.
 *
 * Pure string building: same rows and options always yield the same bytes
 * (no timestamps, no randomness), which keeps chart output diffable.
 */

import { SweepRow } from "./csv";

export interface SeriesStyle {
  key: string;
  label: string;
  color: string;
}

/** Fixed legend/series order, matching the CSV row order contract. */
export const SCHEME_STYLES: SeriesStyle[] = [
  { key: "proposed", label: "Proposed", color: "#1f77b4" },
  { key: "relay_computing", label: "Relay Computing", color: "#d62728" },
  { key: "local_computing", label: "Local Computing", color: "#2ca02c" },
];

export interface Series extends SeriesStyle {
  points: Array<{ x: number; y: number }>;
}

export interface ChartOptions {
  title?: string;
  xLabel?: string;
  yLabel?: string;
  logY?: boolean;
  width?: number;
  height?: number;
}

export type WarnFn = (message: string) => void;

/**
 * Group rows into the fixed-order series, dropping unplottable points.
 * Missing schemes, unknown schemes, NaN means and single-point series are
 * reported through `warn` instead of failing: a degraded chart beats none.
 */
export function buildSeries(rows: SweepRow[], warn: WarnFn = () => {}): Series[] {
  const known = new Set(SCHEME_STYLES.map((s) => s.key));
  for (const scheme of new Set(rows.map((r) => r.scheme))) {
    if (!known.has(scheme)) {
      warn(`ignoring rows of unknown scheme "${scheme}"`);
    }
  }
  const series: Series[] = [];
  for (const style of SCHEME_STYLES) {
    const mine = rows.filter((r) => r.scheme === style.key);
    if (mine.length === 0) {
      warn(`scheme "${style.key}" has no rows; plotting the remaining series`);
      continue;
    }
    const points = mine
      .filter((r) => {
        if (Number.isNaN(r.mean_energy)) {
          warn(`scheme "${style.key}" at T=${r.deadline_T}: no feasible trials, point dropped`);
          return false;
        }
        return true;
      })
      .map((r) => ({ x: r.deadline_T, y: r.mean_energy }))
      .sort((a, b) => a.x - b.x);
    if (points.length === 0) {
      warn(`scheme "${style.key}" has no plottable points`);
      continue;
    }
    if (points.length < 2) {
      warn(`scheme "${style.key}" has a single point; drawing markers only`);
    }
    series.push({ ...style, points });
  }
  if (series.length === 0) {
    throw new Error("nothing to plot: no scheme has a plottable point");
  }
  return series;
}

/** 1-2-5 tick sequence covering [lo, hi], about `count` ticks. */
export function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / Math.max(count - 1, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm <= 1 ? 1 : norm <= 2 ? 2 : norm <= 5 ? 5 : 10) * mag;
  const ticks: number[] = [];
  let t = Math.ceil(lo / step) * step;
  for (; t <= hi + step * 1e-9; t += step) {
    ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return ticks;
}

function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); Math.pow(10, e) <= hi * (1 + 1e-9); e++) {
    if (Math.pow(10, e) >= lo * (1 - 1e-9)) ticks.push(Math.pow(10, e));
  }
  return ticks;
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e-3 && a < 1e4) {
    return String(Number(v.toPrecision(4)));
  }
  return v.toExponential(1).replace("e-", "e-").replace("e+", "e");
}

const fx = (v: number) => v.toFixed(2);

/** Render the chart as a self-contained SVG document string. */
export function renderSvg(series: Series[], options: ChartOptions = {}): string {
  const width = options.width ?? 760;
  const height = options.height ?? 480;
  const margin = { top: 46, right: 26, bottom: 58, left: 86 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const logY = options.logY ?? false;

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.map((p) => p.y));
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  let yLo = Math.min(...ys);
  let yHi = Math.max(...ys);
  if (logY && yLo <= 0) {
    throw new Error("log y-scale needs strictly positive energies");
  }
  if (xLo === xHi) {
    const pad = Math.max(Math.abs(xLo) * 0.1, 1e-6);
    xLo -= pad;
    xHi += pad;
  } else {
    const pad = (xHi - xLo) * 0.04;
    xLo -= pad;
    xHi += pad;
  }
  if (yLo === yHi) {
    const pad = Math.max(Math.abs(yLo) * 0.1, 1e-12);
    yLo -= pad;
    yHi += pad;
  } else if (logY) {
    yLo /= 1.15;
    yHi *= 1.15;
  } else {
    const pad = (yHi - yLo) * 0.06;
    yLo = Math.max(0, yLo - pad);
    yHi += pad;
  }

  const sx = (x: number) => margin.left + ((x - xLo) / (xHi - xLo)) * plotW;
  const sy = logY
    ? (y: number) =>
        margin.top + plotH - ((Math.log10(y) - Math.log10(yLo)) / (Math.log10(yHi) - Math.log10(yLo))) * plotH
    : (y: number) => margin.top + plotH - ((y - yLo) / (yHi - yLo)) * plotH;

  const xTicks = niceTicks(xLo, xHi);
  let yTicks = logY ? decadeTicks(yLo, yHi) : niceTicks(yLo, yHi);
  if (yTicks.length < 2) {
    yTicks = niceTicks(yLo, yHi); // sub-decade log range: nice values still land fine
  }

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${fx(width / 2)}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16" fill="#222">${options.title ?? "Total energy consumption vs delay constraint"}</text>`,
  );

  for (const t of xTicks) {
    const x = fx(sx(t));
    parts.push(`<line x1="${x}" y1="${fx(margin.top)}" x2="${x}" y2="${fx(margin.top + plotH)}" stroke="#ddd"/>`);
    parts.push(
      `<text x="${x}" y="${fx(margin.top + plotH + 20)}" text-anchor="middle" font-family="sans-serif" font-size="12" fill="#444">${fmtTick(t)}</text>`,
    );
  }
  for (const t of yTicks) {
    const y = fx(sy(t));
    parts.push(`<line x1="${fx(margin.left)}" y1="${y}" x2="${fx(margin.left + plotW)}" y2="${y}" stroke="#ddd"/>`);
    parts.push(
      `<text x="${fx(margin.left - 8)}" y="${y}" dy="4" text-anchor="end" font-family="sans-serif" font-size="12" fill="#444">${fmtTick(t)}</text>`,
    );
  }
  parts.push(
    `<rect x="${fx(margin.left)}" y="${fx(margin.top)}" width="${fx(plotW)}" height="${fx(plotH)}" fill="none" stroke="#333"/>`,
  );
  parts.push(
    `<text x="${fx(margin.left + plotW / 2)}" y="${fx(height - 14)}" text-anchor="middle" font-family="sans-serif" font-size="13" fill="#222">${options.xLabel ?? "delay constraint T (s)"}</text>`,
  );
  parts.push(
    `<text x="20" y="${fx(margin.top + plotH / 2)}" text-anchor="middle" font-family="sans-serif" font-size="13" fill="#222" transform="rotate(-90 20 ${fx(margin.top + plotH / 2)})">${options.yLabel ?? "mean total energy (J)"}</text>`,
  );

  for (const s of series) {
    const coords = s.points.map((p) => `${fx(sx(p.x))},${fx(sy(p.y))}`);
    if (coords.length > 1) {
      parts.push(`<polyline points="${coords.join(" ")}" fill="none" stroke="${s.color}" stroke-width="2"/>`);
    }
    for (const c of coords) {
      const [x, y] = c.split(",");
      parts.push(`<circle cx="${x}" cy="${y}" r="3.5" fill="${s.color}"/>`);
    }
  }

  // legend, fixed order, top-right corner of the plot area
  const legendX = margin.left + plotW - 190;
  series.forEach((s, i) => {
    const y = margin.top + 16 + i * 20;
    parts.push(
      `<line x1="${fx(legendX)}" y1="${fx(y)}" x2="${fx(legendX + 26)}" y2="${fx(y)}" stroke="${s.color}" stroke-width="2"/>`,
    );
    parts.push(`<circle cx="${fx(legendX + 13)}" cy="${fx(y)}" r="3.5" fill="${s.color}"/>`);
    parts.push(
      `<text x="${fx(legendX + 34)}" y="${fx(y + 4)}" font-family="sans-serif" font-size="13" fill="#222">${s.label}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
