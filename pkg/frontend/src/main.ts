/** Browser wiring: canvases, badges, toolbar.  All logic lives in state.ts;
 * this file only maps DOM events to operations and paints the results. */

import { ApiClient, ServiceError } from "./api.js";
import { escapeTimePalette, renderRgba } from "./palette.js";
import {
  canRunVerify,
  clickParameter,
  exportViewPath,
  importViewPath,
  newViewState,
  runVerify,
  selectPoint,
  selectedSlice,
  validatePath,
  type ViewState,
  type Viewport,
} from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

function toast(message: string): void {
  const box = el<HTMLDivElement>("toast");
  box.textContent = message;
  box.classList.add("visible");
  window.setTimeout(() => box.classList.remove("visible"), 4000);
}

function drawParameterPlane(state: ViewState): void {
  const canvas = el<HTMLCanvasElement>("plane");
  const ctx = canvas.getContext("2d");
  if (ctx === null) return;
  const { viewport } = state;
  ctx.fillStyle = "#101018";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#3a3a55";
  const axisY = viewport.heightPx / 2 + viewport.centerIm / viewport.unitsPerPixel;
  ctx.beginPath();
  ctx.moveTo(0, axisY);
  ctx.lineTo(viewport.widthPx, axisY);
  ctx.stroke();
  ctx.strokeStyle = "#8fd";
  ctx.beginPath();
  state.path.points.forEach((p, i) => {
    const x = viewport.widthPx / 2 + (p.re - viewport.centerRe) / viewport.unitsPerPixel;
    const y = viewport.heightPx / 2 - (p.im - viewport.centerIm) / viewport.unitsPerPixel;
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  ctx.stroke();
  state.path.points.forEach((p, i) => {
    const x = viewport.widthPx / 2 + (p.re - viewport.centerRe) / viewport.unitsPerPixel;
    const y = viewport.heightPx / 2 - (p.im - viewport.centerIm) / viewport.unitsPerPixel;
    ctx.fillStyle = i === state.selected ? "#ffd54a" : "#8fd";
    ctx.beginPath();
    ctx.arc(x, y, 4, 0, 2 * Math.PI);
    ctx.fill();
  });
}

function drawSlice(state: ViewState): void {
  const canvas = el<HTMLCanvasElement>("slice");
  const ctx = canvas.getContext("2d");
  if (ctx === null) return;
  const record = selectedSlice(state);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const badges = el<HTMLDivElement>("badges");
  badges.textContent = "";
  if (record === null) return;
  const { image } = record;
  const palette = escapeTimePalette(image.maxval);
  const data = new ImageData(renderRgba(image, palette), image.width, image.height);
  createImageBitmap(data).then((bitmap) => {
    ctx.imageSmoothingEnabled = false;
    ctx.drawImage(bitmap, 0, 0, canvas.width, canvas.height);
  });
  const flags = record.flags;
  for (const [label, on] of [
    ["DN", flags.inDN],
    ["HOV", flags.inHOV],
    ["EMP", flags.inEMP],
  ] as const) {
    const badge = document.createElement("span");
    badge.className = on ? "badge on" : "badge";
    badge.textContent = label;
    badges.appendChild(badge);
  }
}

function drawPanels(state: ViewState): void {
  const validation = el<HTMLPreElement>("validation");
  validation.textContent =
    state.validation === null
      ? ""
      : [
          `valid: ${state.validation.valid} (budget |Δa| ≤ ${state.validation.step_budget})`,
          ...state.validation.segments.map(
            (s) => `  ${s.from}→${s.to}  |Δa|=${s.delta.toFixed(4)}  ${s.ok ? "ok" : "TOO LONG"}`,
          ),
        ].join("\n");
  const verify = el<HTMLPreElement>("verify");
  if (state.verify === null) {
    verify.textContent = "";
  } else {
    const { disk, report } = state.verify;
    verify.textContent = [
      `disk (${disk.N},${disk.M}) at a=${report.params.a}, b=${report.params.b}: ${report.verdict}`,
      "  n  predicted  observed  lost",
      ...report.rows.map(
        (r) =>
          `  ${r.n}  ${r.predicted}  ${r.observed ?? "?"}  ${r.lost.join(",") || "-"}`,
      ),
    ].join("\n");
  }
  el<HTMLButtonElement>("run-verify").disabled = !canRunVerify(state).ok;
}

function redraw(state: ViewState): void {
  drawParameterPlane(state);
  drawSlice(state);
  drawPanels(state);
}

function describeError(error: unknown): string {
  if (error instanceof ServiceError || error instanceof RangeError) return error.message;
  return `unexpected error: ${String(error)}`;
}

export function boot(): void {
  const api = new ApiClient("");
  const plane = el<HTMLCanvasElement>("plane");
  const viewport: Viewport = {
    centerRe: 4,
    centerIm: 0,
    unitsPerPixel: 0.02,
    widthPx: plane.width,
    heightPx: plane.height,
  };
  let state = newViewState(Number(el<HTMLInputElement>("b-input").value) || 0.4, { viewport });
  let busy = false;

  const apply = (next: ViewState): void => {
    state = next;
    redraw(state);
  };

  plane.addEventListener("click", (event) => {
    if (busy) return;
    const rect = plane.getBoundingClientRect();
    busy = true;
    clickParameter(state, api, {
      x: event.clientX - rect.left,
      y: event.clientY - rect.top,
    })
      .then(apply)
      .catch((error) => toast(describeError(error)))
      .finally(() => {
        busy = false;
      });
  });

  el<HTMLButtonElement>("validate").addEventListener("click", () => {
    validatePath(state, api)
      .then(apply)
      .catch((error) => toast(describeError(error)));
  });

  el<HTMLButtonElement>("export").addEventListener("click", () => {
    const blob = new Blob([exportViewPath(state)], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "path.json";
    link.click();
    URL.revokeObjectURL(link.href);
  });

  el<HTMLInputElement>("import").addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (file === undefined) return;
    file
      .text()
      .then((text) => apply(importViewPath(state, text)))
      .catch((error) => toast(describeError(error)));
    input.value = "";
  });

  el<HTMLButtonElement>("run-verify").addEventListener("click", () => {
    const n = Number(el<HTMLInputElement>("disk-n").value);
    const m = Number(el<HTMLInputElement>("disk-m").value);
    const nMax = Number(el<HTMLInputElement>("n-max").value);
    runVerify(state, api, n, m, nMax)
      .then(apply)
      .catch((error) => toast(describeError(error)));
  });

  el<HTMLDivElement>("points").addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const index = Number(target.dataset.index);
    if (Number.isInteger(index) && index >= 0) apply(selectPoint(state, index));
  });

  redraw(state);
}

if (typeof document !== "undefined" && document.getElementById("plane") !== null) {
  boot();
}
