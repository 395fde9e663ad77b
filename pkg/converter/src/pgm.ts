// Binary P5 writers matching the pipeline's dataset layout: frames as 16-bit
// big-endian samples, masks as 8-bit {0, 255}.

export function encodePgm16(width: number, height: number, values: ArrayLike<number>): Buffer {
  const header = Buffer.from(`P5\n${width} ${height}\n65535\n`, "latin1");
  const body = Buffer.alloc(width * height * 2);
  for (let i = 0; i < width * height; i++) {
    const v = Number(values[i]);
    if (!Number.isFinite(v)) throw new Error(`non-finite sample at index ${i}`);
    const q = Math.round(v);
    if (q < 0 || q > 65535) {
      throw new Error(`sample ${v} at index ${i} outside [0, 65535]`);
    }
    body.writeUInt16BE(q, 2 * i);
  }
  return Buffer.concat([header, body]);
}

export function encodeMaskPgm(width: number, height: number, mask: Uint8Array): Buffer {
  const header = Buffer.from(`P5\n${width} ${height}\n255\n`, "latin1");
  const body = Buffer.alloc(width * height);
  for (let i = 0; i < width * height; i++) {
    body[i] = mask[i] ? 255 : 0;
  }
  return Buffer.concat([header, body]);
}
