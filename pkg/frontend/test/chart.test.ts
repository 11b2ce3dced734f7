import fs from "node:fs";
import path from "node:path";

import { describe, expect, it } from "vitest";

import { buildSeries, niceTicks, renderSvg, SCHEME_STYLES } from "../src/chart";
import { parseSweepCsv } from "../src/csv";

const FIXTURE = path.join(__dirname, "fixtures", "sweep_sample.csv");
const rows = parseSweepCsv(fs.readFileSync(FIXTURE, "utf8"));

describe("buildSeries", () => {
  it("produces the three series in fixed legend order", () => {
    const series = buildSeries(rows);
    expect(series.map((s) => s.label)).toEqual([
      "Proposed",
      "Relay Computing",
      "Local Computing",
    ]);
    for (const s of series) {
      expect(s.points).toHaveLength(5);
      const xs = s.points.map((p) => p.x);
      expect([...xs].sort((a, b) => a - b)).toEqual(xs);
    }
  });

  it("warns and continues when a scheme is missing", () => {
    const warnings: string[] = [];
    const series = buildSeries(
      rows.filter((r) => r.scheme === "proposed"),
      (m) => warnings.push(m),
    );
    expect(series).toHaveLength(1);
    expect(series[0].key).toBe("proposed");
    expect(warnings.some((w) => w.includes("relay_computing"))).toBe(true);
    expect(warnings.some((w) => w.includes("local_computing"))).toBe(true);
  });

  it("warns about unknown schemes and drops their rows", () => {
    const warnings: string[] = [];
    const extra = [...rows, { ...rows[0], scheme: "genie_aided" }];
    const series = buildSeries(extra, (m) => warnings.push(m));
    expect(series).toHaveLength(3);
    expect(warnings.some((w) => w.includes("genie_aided"))).toBe(true);
  });

  it("drops NaN points with a warning", () => {
    const warnings: string[] = [];
    const withNan = rows.map((r) =>
      r.scheme === "local_computing" && r.deadline_T === 0.7
        ? { ...r, mean_energy: NaN }
        : r,
    );
    const series = buildSeries(withNan, (m) => warnings.push(m));
    expect(series[2].points).toHaveLength(4);
    expect(warnings.some((w) => w.includes("no feasible trials"))).toBe(true);
  });

  it("fails loudly when nothing is plottable", () => {
    expect(() => buildSeries([])).toThrow(/nothing to plot/);
  });
});

describe("renderSvg", () => {
  it("draws one polyline per scheme plus markers, legend and axes", () => {
    const svg = renderSvg(buildSeries(rows));
    expect(svg.match(/<polyline /g)).toHaveLength(3);
    expect(svg.match(/<circle /g)!.length).toBeGreaterThanOrEqual(15);
    for (const style of SCHEME_STYLES) {
      expect(svg).toContain(`>${style.label}</text>`);
      expect(svg).toContain(style.color);
    }
    expect(svg).toContain("delay constraint T (s)");
    expect(svg).toContain("mean total energy (J)");
  });

  it("is a pure function of rows and options", () => {
    const a = renderSvg(buildSeries(rows), { logY: false });
    const b = renderSvg(buildSeries(rows), { logY: false });
    expect(a).toBe(b);
    const logged = renderSvg(buildSeries(rows), { logY: true });
    expect(logged).not.toBe(a);
    expect(logged).toContain("<svg");
  });

  it("renders a single point as a marker without a polyline", () => {
    const one = buildSeries(rows.slice(0, 1), () => {});
    const svg = renderSvg(one);
    expect(svg).not.toContain("<polyline");
    expect(svg).toContain("<circle");
  });

  it("rejects log scale on nonpositive data", () => {
    const series = buildSeries(rows.slice(0, 3).map((r) => ({ ...r, mean_energy: 0 })), () => {});
    expect(() => renderSvg(series, { logY: true })).toThrow(/log y-scale/);
  });
});

describe("niceTicks", () => {
  it("covers the range with 1-2-5 steps", () => {
    const ticks = niceTicks(0.66, 1.54);
    expect(ticks[0]).toBeGreaterThanOrEqual(0.66);
    expect(ticks[ticks.length - 1]).toBeLessThanOrEqual(1.54 + 1e-12);
    expect(ticks.length).toBeGreaterThanOrEqual(4);
  });
});
