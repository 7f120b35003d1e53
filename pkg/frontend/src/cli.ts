#!/usr/bin/env node
import * as fs from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { renderAllPanels } from "./panels.js";
import { parseBenchCsv, SchemaError } from "./schema.js";

const argv = yargs(hideBin(process.argv))
  .scriptName("plots")
  .command("$0 <csv>", "render benchmark CSV panels as SVG files", (cmd) =>
    cmd
      .positional("csv", { type: "string", demandOption: true, describe: "benchmark CSV path" })
      .option("out", { type: "string", demandOption: true, describe: "output directory" }),
  )
  .strict()
  .parseSync();

const csvPath = argv.csv as string;
const outDir = argv.out as string;

let text: string;
try {
  text = fs.readFileSync(csvPath, "utf8");
} catch (err) {
  console.error(`cannot read ${csvPath}: ${(err as Error).message}`);
  process.exit(1);
}

try {
  const rows = parseBenchCsv(text);
  const report = renderAllPanels(rows, outDir);
  for (const notice of report.notices) {
    console.log(`notice: ${notice}`);
  }
  for (const file of report.written) {
    console.log(`wrote ${file}`);
  }
  if (report.written.length === 0) {
    console.log("no panels rendered");
  }
} catch (err) {
  if (err instanceof SchemaError) {
    console.error(`schema error in ${csvPath}: ${err.message}`);
    process.exit(2);
  }
  throw err;
}
