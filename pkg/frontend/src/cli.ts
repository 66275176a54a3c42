#!/usr/bin/env node
/**
 * render --in results.csv --out fig.png   (also emits fig.svg)
 *
 * Exit codes: 0 success, 1 schema/input error, 2 unexpected failure.
 */

import { readFileSync } from "node:fs";

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { renderFigure } from "./render.js";
import { SchemaError } from "./schema.js";

export async function runCli(argv: string[]): Promise<number> {
  const args = await yargs(argv)
    .command("$0", "render the sweep comparison figure")
    .command("render", "render the sweep comparison figure")
    .option("in", { type: "string", demandOption: true, describe: "results.csv from a sweep" })
    .option("out", { type: "string", demandOption: true, describe: "output raster path (.png)" })
    .strict()
    .fail((msg, err) => {
      throw err ?? new SchemaError(msg ?? "bad arguments");
    })
    .parse();

  let csvText: string;
  try {
    csvText = readFileSync(args.in as string, "utf-8");
  } catch (e) {
    console.error(`error: cannot read ${args.in}: ${(e as Error).message}`);
    return 1;
  }
  try {
    const result = renderFigure(csvText, args.out as string);
    console.log(`wrote ${result.pngPath}`);
    console.log(`wrote ${result.svgPath}`);
    return 0;
  } catch (e) {
    if (e instanceof SchemaError) {
      console.error(`error: ${args.in}: ${e.message}`);
      return 1;
    }
    console.error(`error: ${(e as Error).stack ?? e}`);
    return 2;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === new URL(`file://${process.argv[1]}`).href;

if (invokedDirectly) {
  runCli(hideBin(process.argv)).then(
    (code) => process.exit(code),
    (e) => {
      console.error(`error: ${(e as Error).message}`);
      process.exit(1);
    }
  );
}
