// Minimal reader for the numpy .npy container (the archive stores each
// sequence as one C-ordered (frames, height, width) array).

export interface NpyArray {
  shape: number[];
  /** row-major values, one number per element */
  data: Float64Array;
  descr: string;
}

const MAGIC = Buffer.from("\x93NUMPY", "latin1");

export function parseNpy(buf: Buffer): NpyArray {
  if (buf.length < 10 || !buf.subarray(0, 6).equals(MAGIC)) {
    throw new Error("not an npy file (bad magic)");
  }
  const major = buf[6];
  let headerLen: number;
  let offset: number;
  if (major === 1) {
    headerLen = buf.readUInt16LE(8);
    offset = 10;
  } else if (major === 2 || major === 3) {
    headerLen = buf.readUInt32LE(8);
    offset = 12;
  } else {
    throw new Error(`unsupported npy version ${major}`);
  }
  const header = buf.subarray(offset, offset + headerLen).toString("latin1");
  const descr = matchField(header, /'descr'\s*:\s*'([^']+)'/, "descr");
  const order = matchField(header, /'fortran_order'\s*:\s*(True|False)/, "fortran_order");
  if (order !== "False") {
    throw new Error("fortran-ordered npy arrays are not supported");
  }
  const shapeText = matchField(header, /'shape'\s*:\s*\(([^)]*)\)/, "shape");
  const shape = shapeText
    .split(",")
    .map((s) => s.trim())
    .filter((s) => s.length > 0)
    .map((s) => {
      const n = Number(s);
      if (!Number.isInteger(n) || n < 0) throw new Error(`bad shape entry ${s}`);
      return n;
    });
  const count = shape.reduce((a, b) => a * b, 1);
  const body = buf.subarray(offset + headerLen);
  const data = decodeBody(body, descr, count);
  return { shape, data, descr };
}

function matchField(header: string, re: RegExp, name: string): string {
  const m = header.match(re);
  if (!m) throw new Error(`npy header missing ${name}`);
  return m[1];
}

function decodeBody(body: Buffer, descr: string, count: number): Float64Array {
  const out = new Float64Array(count);
  const need = (itemsize: number) => {
    if (body.length < count * itemsize) {
      throw new Error("npy payload truncated");
    }
  };
  switch (descr) {
    case "|u1":
      need(1);
      for (let i = 0; i < count; i++) out[i] = body[i];
      return out;
    case "<u2":
      need(2);
      for (let i = 0; i < count; i++) out[i] = body.readUInt16LE(2 * i);
      return out;
    case "<i2":
      need(2);
      for (let i = 0; i < count; i++) out[i] = body.readInt16LE(2 * i);
      return out;
    case "<u4":
      need(4);
      for (let i = 0; i < count; i++) out[i] = body.readUInt32LE(4 * i);
      return out;
    case "<i4":
      need(4);
      for (let i = 0; i < count; i++) out[i] = body.readInt32LE(4 * i);
      return out;
    case "<f4":
      need(4);
      for (let i = 0; i < count; i++) out[i] = body.readFloatLE(4 * i);
      return out;
    case "<f8":
      need(8);
      for (let i = 0; i < count; i++) out[i] = body.readDoubleLE(8 * i);
      return out;
    default:
      throw new Error(`unsupported npy dtype ${descr}`);
  }
}

/** Writer used by the tests to build fixtures. */
export function buildNpy(shape: number[], values: ArrayLike<number>, descr = "<u2"): Buffer {
  const shapeText = shape.length === 1 ? `(${shape[0]},)` : `(${shape.join(", ")})`;
  let header = `{'descr': '${descr}', 'fortran_order': False, 'shape': ${shapeText}, }`;
  const unpadded = 10 + header.length + 1;
  header += " ".repeat((64 - (unpadded % 64)) % 64) + "\n";
  const head = Buffer.alloc(10);
  MAGIC.copy(head);
  head[6] = 1;
  head[7] = 0;
  head.writeUInt16LE(header.length, 8);
  const count = shape.reduce((a, b) => a * b, 1);
  let body: Buffer;
  if (descr === "<u2") {
    body = Buffer.alloc(count * 2);
    for (let i = 0; i < count; i++) body.writeUInt16LE(Number(values[i]), 2 * i);
  } else if (descr === "<f8") {
    body = Buffer.alloc(count * 8);
    for (let i = 0; i < count; i++) body.writeDoubleLE(Number(values[i]), 8 * i);
  } else {
    throw new Error(`fixture writer does not support ${descr}`);
  }
  return Buffer.concat([head, Buffer.from(header, "latin1"), body]);
}
