import { execFileSync, spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

const ROOT = path.dirname(path.dirname(fileURLToPath(import.meta.url)));
const CLI = path.join(ROOT, "dist", "cli.js");
const HEADER = "method,sigma,n,trial,mse,wall_time_seconds,em_iters";

function tmpFile(content: string): string {
  const file = path.join(fs.mkdtempSync(path.join(os.tmpdir(), "plots-cli-")), "bench.csv");
  fs.writeFileSync(file, content);
  return file;
}

function tmpDir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "plots-out-"));
}

describe("plots CLI", () => {
  it("renders an n sweep and leaves the input bytes unchanged", () => {
    const lines = [HEADER];
    for (const n of [1000, 2000, 4000]) {
      lines.push(`fast_mle,12.0,${n},0,${1 / n},0.01,`);
    }
    const csv = tmpFile(lines.join("\n"));
    const before = fs.readFileSync(csv);
    const out = tmpDir();

    const stdout = execFileSync(process.execPath, [CLI, csv, "--out", out], {
      encoding: "utf8",
    });
    expect(stdout).toContain("wrote error_vs_n.svg");
    expect(stdout).toContain("wrote time_vs_n.svg");
    expect(fs.readFileSync(csv).equals(before)).toBe(true);
  });

  it("exits zero with a notice on a header-only CSV", () => {
    const csv = tmpFile(`${HEADER}\n`);
    const out = tmpDir();
    const result = spawnSync(process.execPath, [CLI, csv, "--out", out], { encoding: "utf8" });
    expect(result.status).toBe(0);
    expect(result.stdout).toContain("notice:");
    expect(result.stdout).toContain("no panels rendered");
    expect(fs.readdirSync(out)).toEqual([]);
  });

  it("fails with a schema error naming the offending column", () => {
    const csv = tmpFile(`${HEADER}\nfast_mle,4.0,2000,0,oops,0.01,`);
    const result = spawnSync(process.execPath, [CLI, csv, "--out", tmpDir()], {
      encoding: "utf8",
    });
    expect(result.status).toBe(2);
    expect(result.stderr).toContain("schema error");
    expect(result.stderr).toContain('"mse"');
  });

  it("fails with path context when the input file is missing", () => {
    const missing = path.join(tmpDir(), "nope.csv");
    const result = spawnSync(process.execPath, [CLI, missing, "--out", tmpDir()], {
      encoding: "utf8",
    });
    expect(result.status).toBe(1);
    expect(result.stderr).toContain(missing);
  });
});
