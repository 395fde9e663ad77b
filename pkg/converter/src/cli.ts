#!/usr/bin/env node
// Usage: cine-convert <inputDir> <outputDir> [--limit N]

import { convert } from "./convert.js";

function main(argv: string[]): number {
  const positional: string[] = [];
  let limit: number | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--limit") {
      const value = argv[++i];
      limit = Number(value);
      if (!Number.isInteger(limit) || limit < 1) {
        console.error(`cine-convert: --limit expects a positive integer, got ${value}`);
        return 2;
      }
    } else if (arg.startsWith("-")) {
      console.error(`cine-convert: unknown flag ${arg}`);
      return 2;
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 2) {
    console.error("usage: cine-convert <inputDir> <outputDir> [--limit N]");
    return 2;
  }
  try {
    const result = convert(positional[0], positional[1], limit);
    for (const skip of result.skipped) {
      console.error(`skipped ${skip.path}: ${skip.reason}`);
    }
    console.log(
      `converted ${result.converted} sequence(s) -> ${result.manifestPath}` +
        (result.skipped.length ? ` (${result.skipped.length} skipped)` : "")
    );
    return 0;
  } catch (err) {
    console.error(`cine-convert: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

process.exit(main(process.argv.slice(2)));
