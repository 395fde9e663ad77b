import { execFileSync } from "node:child_process";
import { createHash } from "node:crypto";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { convert } from "../src/convert.js";
import { buildNpy, parseNpy } from "../src/npy.js";
import { Point, rasterizePolygon, shoelaceArea } from "../src/raster.js";

const SQUARE: Point[] = [
  [10, 10],
  [40, 10],
  [40, 30],
  [10, 30],
];

let root: string;

beforeAll(() => {
  root = fs.mkdtempSync(path.join(os.tmpdir(), "cine-convert-"));
});

afterAll(() => {
  fs.rmSync(root, { recursive: true, force: true });
});

function writeFixture(dir: string): void {
  // patient A: two uint16 sequences, square contour on frames 0 and 2
  const patA = path.join(dir, "patA");
  fs.mkdirSync(patA, { recursive: true });
  const frames = 4;
  const h = 48;
  const w = 64;
  const ramp = new Array(frames * h * w);
  for (let t = 0; t < frames; t++) {
    for (let i = 0; i < h * w; i++) {
      ramp[t * h * w + i] = (i * 7 + t * 31) % 8012; // stays in the raw 0..8011 range
    }
  }
  fs.writeFileSync(path.join(patA, "s00.npy"), buildNpy([frames, h, w], ramp, "<u2"));
  fs.writeFileSync(path.join(patA, "s01.npy"), buildNpy([frames, h, w], ramp, "<u2"));
  fs.writeFileSync(
    path.join(patA, "record.json"),
    JSON.stringify({
      patientId: "patA",
      sequences: [
        { sequenceId: "patA_s00", framesFile: "s00.npy", contours: { "0": SQUARE, "2": SQUARE } },
        { sequenceId: "patA_s01", framesFile: "s01.npy" },
      ],
    })
  );

  // patient B: float64 source, no contours
  const patB = path.join(dir, "patB");
  fs.mkdirSync(patB, { recursive: true });
  const floats = new Array(2 * 8 * 8).fill(0).map((_, i) => (i * 3.25) % 100);
  fs.writeFileSync(path.join(patB, "s00.npy"), buildNpy([2, 8, 8], floats, "<f8"));
  fs.writeFileSync(
    path.join(patB, "record.json"),
    JSON.stringify({
      patientId: "patB",
      sequences: [{ sequenceId: "patB_s00", framesFile: "s00.npy" }],
    })
  );
}

function digestTree(dir: string): Map<string, string> {
  const out = new Map<string, string>();
  const walk = (d: string) => {
    for (const entry of fs.readdirSync(d, { withFileTypes: true }).sort((a, b) =>
      a.name.localeCompare(b.name)
    )) {
      const p = path.join(d, entry.name);
      if (entry.isDirectory()) walk(p);
      else out.set(path.relative(dir, p), createHash("sha256").update(fs.readFileSync(p)).digest("hex"));
    }
  };
  walk(dir);
  return out;
}

describe("npy container", () => {
  it("round-trips fixture arrays", () => {
    const values = [0, 1, 2, 3, 4, 5];
    const arr = parseNpy(buildNpy([2, 3], values, "<u2"));
    expect(arr.shape).toEqual([2, 3]);
    expect(Array.from(arr.data)).toEqual(values);
  });

  it("rejects foreign files and fortran order", () => {
    expect(() => parseNpy(Buffer.from("nope"))).toThrow(/magic/);
    const buf = buildNpy([2, 2], [1, 2, 3, 4], "<u2");
    const text = buf.toString("latin1").replace("False", "True ");
    expect(() => parseNpy(Buffer.from(text, "latin1"))).toThrow(/fortran/);
  });
});

describe("polygon rasterization", () => {
  it("fills an axis-aligned square exactly", () => {
    const mask = rasterizePolygon(SQUARE, 64, 48);
    let area = 0;
    for (const v of mask) area += v;
    expect(area).toBe(600); // 30 x 20 pixel centers strictly inside
    expect(shoelaceArea(SQUARE)).toBe(600);
    // spot-check corners of the filled region
    expect(mask[10 * 64 + 10]).toBe(1);
    expect(mask[29 * 64 + 39]).toBe(1);
    expect(mask[9 * 64 + 10]).toBe(0);
    expect(mask[10 * 64 + 40]).toBe(0);
  });

  it("matches the shoelace oracle within perimeter pixels for random polygons", () => {
    let state = 12345;
    const rand = () => ((state = (state * 1103515245 + 12345) & 0x7fffffff) / 0x7fffffff);
    for (let trial = 0; trial < 20; trial++) {
      const cx = 24 + rand() * 16;
      const cy = 20 + rand() * 8;
      const n = 5 + Math.floor(rand() * 6);
      const pts: Point[] = [];
      for (let k = 0; k < n; k++) {
        const ang = (2 * Math.PI * k) / n;
        const r = 6 + rand() * 9;
        pts.push([cx + r * Math.cos(ang), cy + r * Math.sin(ang)]);
      }
      const mask = rasterizePolygon(pts, 64, 48);
      let area = 0;
      for (const v of mask) area += v;
      let perimeter = 0;
      for (let i = 0, j = n - 1; i < n; j = i++) {
        perimeter += Math.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
      }
      expect(Math.abs(area - shoelaceArea(pts))).toBeLessThanOrEqual(perimeter + 2);
    }
  });

  it("rejects degenerate and out-of-frame polygons", () => {
    expect(() => rasterizePolygon([[1, 1], [2, 2]] as Point[], 8, 8)).toThrow(/3 points/);
    expect(() => rasterizePolygon([[1, 1], [20, 1], [1, 20]], 8, 8)).toThrow(/outside/);
  });
});

describe("archive conversion", () => {
  it("converts the fixture and passes the primary loader's validation", () => {
    const input = path.join(root, "src1");
    const output = path.join(root, "out1");
    writeFixture(input);
    const result = convert(input, output);
    expect(result.converted).toBe(3);
    expect(result.skipped).toEqual([]);
    expect(fs.existsSync(path.join(output, "manifest.json"))).toBe(true);
    expect(fs.existsSync(path.join(output, "patA_s00", "mask_000.pgm"))).toBe(true);
    expect(fs.existsSync(path.join(output, "patA_s00", "mask_001.pgm"))).toBe(false);

    // full validation through the segmentation pipeline's own loader
    const probe = [
      "from lvseg.data.manifest import load_manifest, load_sequence",
      `m = load_manifest(r'${path.join(output, "manifest.json")}')`,
      "seqs = [load_sequence(m, e) for e in m.sequences]",
      "assert [s.sequence_id for s in seqs] == ['patA_s00', 'patA_s01', 'patB_s00']",
      "assert seqs[0].frames.shape == (4, 48, 64)",
      "assert seqs[0].frames[0, 0, 1] == 7",
      "assert seqs[0].annotated_indices() == [0, 2]",
      "assert seqs[1].masks is None",
      "print('PRIMARY-LOADER-OK')",
    ].join("; ");
    const out = execFileSync("python3", ["-c", probe], { encoding: "utf-8" });
    expect(out).toContain("PRIMARY-LOADER-OK");
  });

  it("rasterized mask area matches the shoelace oracle within perimeter pixels", () => {
    const output = path.join(root, "out1");
    const maskFile = fs.readFileSync(path.join(output, "patA_s00", "mask_000.pgm"));
    const headerEnd = maskFile.indexOf("255\n") + 4;
    let area = 0;
    for (let i = headerEnd; i < maskFile.length; i++) if (maskFile[i]) area++;
    const perimeter = 2 * (30 + 20);
    expect(Math.abs(area - shoelaceArea(SQUARE))).toBeLessThanOrEqual(perimeter);
  });

  it("re-running produces byte-identical output", () => {
    const input = path.join(root, "src1");
    const output = path.join(root, "out1");
    const before = digestTree(output);
    convert(input, output);
    expect(digestTree(output)).toEqual(before);
    // and a fresh directory converts to the same bytes too
    const output2 = path.join(root, "out1-again");
    convert(input, output2);
    expect(digestTree(output2)).toEqual(before);
  });

  it("honors --limit at patient granularity", () => {
    const input = path.join(root, "src1");
    const output = path.join(root, "outLimited");
    const result = convert(input, output, 1);
    expect(result.converted).toBe(2); // patA only
    expect(fs.existsSync(path.join(output, "patB_s00"))).toBe(false);
  });

  it("skips malformed records with a reason and fails only when nothing converts", () => {
    const input = path.join(root, "src2");
    writeFixture(input);
    const broken = path.join(input, "patC");
    fs.mkdirSync(broken, { recursive: true });
    fs.writeFileSync(path.join(broken, "record.json"), "{not json");
    const result = convert(input, path.join(root, "out2"));
    expect(result.converted).toBe(3);
    expect(result.skipped).toHaveLength(1);
    expect(result.skipped[0].path).toContain("patC");

    const empty = path.join(root, "src3");
    fs.mkdirSync(path.join(empty, "patX"), { recursive: true });
    fs.writeFileSync(path.join(empty, "patX", "record.json"), "{}");
    expect(() => convert(empty, path.join(root, "out3"))).toThrow(/nothing converted/);
  });

  it("rejects out-of-range and bad contour indices per sequence, keeping the rest", () => {
    const input = path.join(root, "src4");
    const pat = path.join(input, "pat");
    fs.mkdirSync(pat, { recursive: true });
    fs.writeFileSync(path.join(pat, "good.npy"), buildNpy([1, 8, 8], new Array(64).fill(5), "<u2"));
    fs.writeFileSync(
      path.join(pat, "record.json"),
      JSON.stringify({
        patientId: "pat",
        sequences: [
          { sequenceId: "pat_good", framesFile: "good.npy" },
          { sequenceId: "pat_badidx", framesFile: "good.npy", contours: { "9": SQUARE } },
        ],
      })
    );
    const result = convert(input, path.join(root, "out4"));
    expect(result.converted).toBe(1);
    expect(result.skipped).toHaveLength(1);
    expect(result.skipped[0].reason).toMatch(/outside 0\.\.0/);
  });
});
