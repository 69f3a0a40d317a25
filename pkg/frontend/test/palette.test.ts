import { afterEach, describe, expect, it } from "vitest";

import { PATH_COLORS, colorSwatch, pathColor } from "../src/palette.js";
import { unmountAll } from "./helpers.js";

afterEach(unmountAll);

describe("path palette", () => {
  it("has ten distinct colors", () => {
    expect(PATH_COLORS.length).toBe(10);
    expect(new Set(PATH_COLORS).size).toBe(10);
  });

  it("keeps the first ten indices solid", () => {
    for (let i = 0; i < 10; i++) {
      expect(pathColor(i)).toEqual({ color: PATH_COLORS[i], hatched: false });
    }
  });

  it("hatches indices past the palette, reusing colors in order", () => {
    expect(pathColor(10)).toEqual({ color: PATH_COLORS[0], hatched: true });
    expect(pathColor(13)).toEqual({ color: PATH_COLORS[3], hatched: true });
    expect(pathColor(23)).toEqual({ color: PATH_COLORS[3], hatched: true });
  });

  it("builds swatches carrying the index for DOM assertions", () => {
    const solid = colorSwatch(4, "value-bar");
    expect(solid.dataset.colorIndex).toBe("4");
    expect(solid.className).toBe("value-bar");
    expect(solid.classList.contains("hatched")).toBe(false);

    const hatched = colorSwatch(12, "path-icon");
    expect(hatched.classList.contains("hatched")).toBe(true);
    expect(hatched.style.backgroundColor).toBe(colorSwatch(2, "path-icon").style.backgroundColor);
  });
});
