// Scanline even-odd polygon fill sampled at pixel centers.  Contour points
// are [x, y] in pixel coordinates; a pixel (row, col) is inside when its
// center (col + 0.5, row + 0.5) falls inside the polygon.

export type Point = [number, number];

export function rasterizePolygon(points: Point[], width: number, height: number): Uint8Array {
  if (points.length < 3) {
    throw new Error(`polygon needs at least 3 points, got ${points.length}`);
  }
  for (const [x, y] of points) {
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      throw new Error("polygon has non-finite coordinates");
    }
    if (x < 0 || x > width || y < 0 || y > height) {
      throw new Error(`polygon point (${x}, ${y}) outside ${width}x${height} frame`);
    }
  }
  const mask = new Uint8Array(width * height);
  const n = points.length;
  for (let row = 0; row < height; row++) {
    const yc = row + 0.5;
    const hits: number[] = [];
    for (let i = 0, j = n - 1; i < n; j = i++) {
      const [x1, y1] = points[i];
      const [x2, y2] = points[j];
      // half-open rule: each edge counts its lower endpoint exactly once
      if ((y1 <= yc && y2 > yc) || (y2 <= yc && y1 > yc)) {
        hits.push(x1 + ((yc - y1) / (y2 - y1)) * (x2 - x1));
      }
    }
    if (hits.length < 2) continue;
    hits.sort((a, b) => a - b);
    for (let k = 0; k + 1 < hits.length; k += 2) {
      // centers strictly inside [a, b): col + 0.5 >= a and col + 0.5 < b
      const start = Math.max(0, Math.ceil(hits[k] - 0.5));
      const stop = Math.min(width - 1, Math.ceil(hits[k + 1] - 0.5) - 1);
      for (let col = start; col <= stop; col++) {
        mask[row * width + col] = 1;
      }
    }
  }
  return mask;
}

/** Signed polygon area by the shoelace formula (used as a test oracle). */
export function shoelaceArea(points: Point[]): number {
  let acc = 0;
  for (let i = 0, j = points.length - 1; i < points.length; j = i++) {
    acc += points[j][0] * points[i][1] - points[i][0] * points[j][1];
  }
  return Math.abs(acc) / 2;
}
