// Path colors. The server assigns each call path a color index in
// first-seen order; every surface that shows the index (value bars in
// the code view, path icons in the sidebar) must map it through this
// table so the colors agree.

export const PATH_COLORS: readonly string[] = [
  "#4269d0",
  "#efb118",
  "#ff725c",
  "#6cc5b0",
  "#3ca951",
  "#ff8ab7",
  "#a463f2",
  "#97bbf5",
  "#9c6b4e",
  "#9498a0",
];

export interface PathColor {
  color: string;
  hatched: boolean;
}

// Indices past the palette reuse colors with a hatch overlay so two
// distinct paths never render identically.
export function pathColor(index: number): PathColor {
  return {
    color: PATH_COLORS[index % PATH_COLORS.length],
    hatched: index >= PATH_COLORS.length,
  };
}

export function colorSwatch(index: number, className: string): HTMLSpanElement {
  const { color, hatched } = pathColor(index);
  const el = document.createElement("span");
  el.className = className;
  el.dataset.colorIndex = String(index);
  el.style.backgroundColor = color;
  if (hatched) el.classList.add("hatched");
  return el;
}
