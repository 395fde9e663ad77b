// Archive conversion: per-patient record directories holding npy frame
// stacks and manual endocardium contours become the pipeline's portable
// manifest + PGM layout.
//
// Expected source layout (one directory per patient under the input root):
//
//   <inputDir>/<patient>/record.json
//     {
//       "patientId": "pat001",
//       "sequences": [
//         {
//           "sequenceId": "pat001_s00",
//           "framesFile": "s00.npy",            // (frames, height, width)
//           "contours": { "0": [[x, y], ...] }  // frame index -> closed polygon
//         }
//       ]
//     }
//
// Frames are written verbatim as 16-bit PGM (floating-point sources are
// rounded to the nearest integer sample); contours become filled binary
// masks via even-odd scanline rasterization.  Malformed records are skipped
// with a logged reason; conversion fails only when nothing converts.

import * as fs from "node:fs";
import * as path from "node:path";

import { parseNpy } from "./npy.js";
import { encodeMaskPgm, encodePgm16 } from "./pgm.js";
import { Point, rasterizePolygon } from "./raster.js";

export interface SequenceRecord {
  sequenceId: string;
  framesFile: string;
  contours?: Record<string, Point[]>;
}

export interface PatientRecord {
  patientId: string;
  sequences: SequenceRecord[];
}

export interface ManifestSequence {
  sequenceId: string;
  patientId: string;
  framePaths: string[];
  maskPaths: (string | null)[] | null;
  height: number;
  width: number;
}

export interface ConvertResult {
  converted: number;
  skipped: { path: string; reason: string }[];
  manifestPath: string;
}

export function convert(inputDir: string, outputDir: string, limit?: number): ConvertResult {
  const patients = listPatientDirs(inputDir);
  const selected = limit !== undefined ? patients.slice(0, limit) : patients;
  const sequences: ManifestSequence[] = [];
  const skipped: { path: string; reason: string }[] = [];

  fs.mkdirSync(outputDir, { recursive: true });
  for (const patientDir of selected) {
    const recordPath = path.join(patientDir, "record.json");
    let record: PatientRecord;
    try {
      record = readRecord(recordPath);
    } catch (err) {
      skipped.push({ path: recordPath, reason: message(err) });
      continue;
    }
    for (const seq of record.sequences) {
      try {
        sequences.push(convertSequence(patientDir, record.patientId, seq, outputDir));
      } catch (err) {
        skipped.push({
          path: path.join(patientDir, seq.framesFile ?? "<missing framesFile>"),
          reason: message(err),
        });
      }
    }
  }

  if (sequences.length === 0) {
    throw new Error(
      `nothing converted from ${inputDir} (${skipped.length} records skipped)`
    );
  }
  sequences.sort((a, b) => a.sequenceId.localeCompare(b.sequenceId));
  const manifestPath = path.join(outputDir, "manifest.json");
  writeFileDeterministic(
    manifestPath,
    Buffer.from(renderManifest(sequences), "utf-8")
  );
  return { converted: sequences.length, skipped, manifestPath };
}

function listPatientDirs(inputDir: string): string[] {
  let entries: fs.Dirent[];
  try {
    entries = fs.readdirSync(inputDir, { withFileTypes: true });
  } catch (err) {
    throw new Error(`cannot read input directory ${inputDir}: ${message(err)}`);
  }
  return entries
    .filter((e) => e.isDirectory())
    .map((e) => path.join(inputDir, e.name))
    .sort();
}

function readRecord(recordPath: string): PatientRecord {
  const raw = fs.readFileSync(recordPath, "utf-8");
  const parsed = JSON.parse(raw);
  if (typeof parsed.patientId !== "string" || !parsed.patientId) {
    throw new Error("record.json missing patientId");
  }
  if (!Array.isArray(parsed.sequences) || parsed.sequences.length === 0) {
    throw new Error("record.json has no sequences");
  }
  return parsed as PatientRecord;
}

function convertSequence(
  patientDir: string,
  patientId: string,
  seq: SequenceRecord,
  outputDir: string
): ManifestSequence {
  if (typeof seq.sequenceId !== "string" || !seq.sequenceId) {
    throw new Error("sequence missing sequenceId");
  }
  if (typeof seq.framesFile !== "string") {
    throw new Error(`sequence ${seq.sequenceId} missing framesFile`);
  }
  const arr = parseNpy(fs.readFileSync(path.join(patientDir, seq.framesFile)));
  if (arr.shape.length !== 3) {
    throw new Error(`${seq.framesFile}: expected (frames, height, width), got ${arr.shape}`);
  }
  const [frames, height, width] = arr.shape;
  if (frames === 0 || height === 0 || width === 0) {
    throw new Error(`${seq.framesFile}: empty array`);
  }

  const contours = new Map<number, Point[]>();
  for (const [key, pts] of Object.entries(seq.contours ?? {})) {
    const t = Number(key);
    if (!Number.isInteger(t) || t < 0 || t >= frames) {
      throw new Error(`contour frame index ${key} outside 0..${frames - 1}`);
    }
    if (!Array.isArray(pts) || pts.length < 3) {
      throw new Error(`contour for frame ${key} needs >= 3 points`);
    }
    contours.set(t, pts as Point[]);
  }

  const seqDir = path.join(outputDir, seq.sequenceId);
  fs.mkdirSync(seqDir, { recursive: true });
  const framePaths: string[] = [];
  const maskPaths: (string | null)[] = [];
  const plane = height * width;
  for (let t = 0; t < frames; t++) {
    const slice = arr.data.subarray(t * plane, (t + 1) * plane);
    const frameRel = `${seq.sequenceId}/frame_${pad3(t)}.pgm`;
    writeFileDeterministic(path.join(outputDir, frameRel), encodePgm16(width, height, slice));
    framePaths.push(frameRel);
    const contour = contours.get(t);
    if (contour === undefined) {
      maskPaths.push(null);
      continue;
    }
    const mask = rasterizePolygon(contour, width, height);
    const maskRel = `${seq.sequenceId}/mask_${pad3(t)}.pgm`;
    writeFileDeterministic(path.join(outputDir, maskRel), encodeMaskPgm(width, height, mask));
    maskPaths.push(maskRel);
  }
  return {
    sequenceId: seq.sequenceId,
    patientId,
    framePaths,
    maskPaths: contours.size > 0 ? maskPaths : null,
    height,
    width,
  };
}

function renderManifest(sequences: ManifestSequence[]): string {
  // key order matches the reference writer so repeated runs are byte-stable
  const payload = {
    formatVersion: 1,
    sequences: sequences.map((s) => ({
      framePaths: s.framePaths,
      height: s.height,
      maskPaths: s.maskPaths,
      patientId: s.patientId,
      sequenceId: s.sequenceId,
      width: s.width,
    })),
  };
  return JSON.stringify(payload, null, 2) + "\n";
}

function writeFileDeterministic(target: string, data: Buffer): void {
  // skip rewriting identical content so reruns never touch mtimes mid-failure
  if (fs.existsSync(target) && fs.readFileSync(target).equals(data)) {
    return;
  }
  fs.writeFileSync(target, data);
}

function pad3(n: number): string {
  return n.toString().padStart(3, "0");
}

function message(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}
