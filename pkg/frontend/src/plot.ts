#!/usr/bin/env node
/**
 * plot — render a sweep CSV as an energy-vs-deadline chart.
 *
 *   plot --in sweep.csv --out fig1.svg [--log-y] [--title "..."]
 *
 * Output format follows the file extension: .svg writes the deterministic
 * SVG directly, .png rasterizes it. The input CSV is only ever read.
 */

import fs from "node:fs";
import path from "node:path";
import { parseArgs } from "node:util";

import { Resvg } from "@resvg/resvg-js";

import { buildSeries, renderSvg, WarnFn } from "./chart";
import { parseSweepCsv, SchemaError } from "./csv";

export interface PlotSpec {
  inputCsv: string;
  outputImage: string;
  yScale: "linear" | "log";
  title?: string;
  xLabel?: string;
  yLabel?: string;
}

/** Build the chart and write it to spec.outputImage. Returns the SVG text. */
export function render(spec: PlotSpec, warn: WarnFn = (m) => console.warn(`warning: ${m}`)): string {
  let text: string;
  try {
    text = fs.readFileSync(spec.inputCsv, "utf8");
  } catch (err) {
    throw new Error(`cannot read ${spec.inputCsv}: ${(err as Error).message}`);
  }
  const rows = parseSweepCsv(text);
  const series = buildSeries(rows, warn);
  const svg = renderSvg(series, {
    title: spec.title,
    xLabel: spec.xLabel,
    yLabel: spec.yLabel,
    logY: spec.yScale === "log",
  });
  const ext = path.extname(spec.outputImage).toLowerCase();
  if (ext === ".svg") {
    fs.writeFileSync(spec.outputImage, svg);
  } else if (ext === ".png") {
    const png = new Resvg(svg, { fitTo: { mode: "original" } }).render().asPng();
    fs.writeFileSync(spec.outputImage, png);
  } else {
    throw new Error(`unsupported output extension "${ext}" (use .svg or .png)`);
  }
  return svg;
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        "log-y": { type: "boolean", default: false },
        title: { type: "string" },
        help: { type: "boolean", default: false },
      },
    });
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  const values = parsed.values;
  if (values.help || !values.in || !values.out) {
    console.error('usage: plot --in sweep.csv --out fig1.{svg,png} [--log-y] [--title "..."]');
    return values.help ? 0 : 2;
  }
  try {
    render({
      inputCsv: values.in,
      outputImage: values.out,
      yScale: values["log-y"] ? "log" : "linear",
      title: values.title,
    });
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`error: sweep CSV schema mismatch: ${err.message}`);
    } else {
      console.error(`error: ${(err as Error).message}`);
    }
    return 1;
  }
  return 0;
}

/* istanbul ignore next: CLI entry */
if (typeof require !== "undefined" && require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
