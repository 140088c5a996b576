import init, { tmst_curve, tmst_optimum, coop_curve, coop_optimum, smpc_curve } from "./pkg/qimem_wasm.js";

const $ = (id) => document.getElementById(id);
const fmt = (x, d = 4) => (Number.isFinite(x) ? x.toPrecision(d) : "n/a");

// Plots y against x (both plain arrays); NaN leaves a gap. logX draws x on a log axis.
function plot(canvas, xs, series, { logX = false, xLabel = "", marks = [] } = {}) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, L = 48, R = 10, T = 10, B = 34;
  ctx.clearRect(0, 0, W, H);
  const tx = logX ? Math.log10 : (v) => v;
  const x0 = tx(xs[0]), x1 = tx(xs[xs.length - 1]);
  const ys = series.flatMap((s) => s.ys).filter(Number.isFinite);
  let y0 = Math.min(0, ...ys), y1 = Math.max(2.1, ...ys);
  const px = (x) => L + ((tx(x) - x0) / (x1 - x0)) * (W - L - R);
  const py = (y) => H - B - ((y - y0) / (y1 - y0)) * (H - T - B);

  ctx.strokeStyle = "#888"; ctx.fillStyle = "#444"; ctx.font = "11px sans-serif";
  ctx.strokeRect(L, T, W - L - R, H - T - B);
  for (let y = Math.ceil(y0 * 2) / 2; y <= y1; y += 0.5) {
    ctx.fillText(y.toFixed(1), 8, py(y) + 4);
  }
  const ticks = logX
    ? Array.from({ length: Math.floor(x1) - Math.ceil(x0) + 1 }, (_, i) => 10 ** (Math.ceil(x0) + i))
    : Array.from({ length: 6 }, (_, i) => xs[0] + (i * (xs[xs.length - 1] - xs[0])) / 5);
  for (const x of ticks) ctx.fillText(logX ? `1e${Math.round(Math.log10(x))}` : x.toPrecision(3), px(x) - 12, H - B + 14);
  ctx.fillText(xLabel, W / 2, H - 4);

  ctx.setLineDash([4, 4]);
  ctx.beginPath(); ctx.moveTo(L, py(1)); ctx.lineTo(W - R, py(1)); ctx.stroke();
  ctx.setLineDash([]);

  for (const { ys, color } of series) {
    ctx.strokeStyle = color; ctx.lineWidth = 2; ctx.beginPath();
    let pen = false;
    xs.forEach((x, i) => {
      if (!Number.isFinite(ys[i])) { pen = false; return; }
      pen ? ctx.lineTo(px(x), py(ys[i])) : ctx.moveTo(px(x), py(ys[i]));
      pen = true;
    });
    ctx.stroke();
  }
  for (const { x, y, color } of marks) {
    if (!Number.isFinite(x) || !Number.isFinite(y)) continue;
    ctx.fillStyle = color; ctx.beginPath(); ctx.arc(px(x), py(y), 4, 0, 2 * Math.PI); ctx.fill();
  }
  ctx.lineWidth = 1;
}

// Wires sliders to `draw`; `show` maps an id to a formatter for its readout.
function bind(ids, draw, show = {}) {
  for (const id of ids) {
    const input = $(id);
    const echo = () => (input.nextElementSibling.textContent = show[id] ? show[id](input.value) : input.value);
    input.addEventListener("input", () => { echo(); draw(); });
    echo();
  }
  draw();
}

function guarded(out, f) {
  return () => {
    try { out.classList.remove("err"); f(); }
    catch (e) { out.classList.add("err"); out.textContent = String(e.message ?? e); }
  };
}

function tmstView() {
  const N = 400, rMax = 1.2;
  const xs = Array.from({ length: N }, (_, i) => (i * rMax) / (N - 1));
  const out = $("tmst-out");
  bind(["tmst-nu", "tmst-eta"], guarded(out, () => {
    const nu = +$("tmst-nu").value, eta = +$("tmst-eta").value;
    const ys = Array.from(tmst_curve(nu, eta, rMax, N));
    const [rOpt, fOpt, rQa] = tmst_optimum(nu, eta);
    plot($("tmst"), xs, [{ ys, color: "#1f5fbf" }], { xLabel: "r", marks: [{ x: rOpt, y: fOpt, color: "#c0392b" }] });
    out.textContent = `r_opt  ${fmt(rOpt)}\nF(r_opt) ${fmt(fOpt)}\nr at F=1 ${fmt(rQa)}`;
  }));
}

function coopView() {
  const N = 400, lo = 1, hi = 1e4;
  const xs = Array.from({ length: N }, (_, i) => 10 ** (Math.log10(lo) + (i * (Math.log10(hi) - Math.log10(lo))) / (N - 1)));
  const out = $("coop-out");
  const gw = () => +$("coop-gw").value;
  bind(["coop-gw", "coop-eta", "coop-t"], guarded(out, () => {
    const eta = +$("coop-eta").value, t = +$("coop-t").value;
    const ys = Array.from(coop_curve(gw(), eta, t, lo, hi, N));
    const [gc, fc, gn, fn, etaC, n] = coop_optimum(gw(), eta, t);
    plot($("coop"), xs, [{ ys, color: "#1f5fbf" }], {
      logX: true, xLabel: "Γ_o",
      marks: [{ x: gc, y: fc, color: "#c0392b" }, { x: gn, y: fn, color: "#27ae60" }],
    });
    out.textContent =
      `N_M^T          ${fmt(n)}\n` +
      `closed-form Γ_o ${fmt(gc)}  F ${fmt(fc)} (red)\n` +
      `numeric Γ_o     ${fmt(gn)}  F ${fmt(fn)} (green)\n` +
      `η_c at Γ_o      ${fmt(etaC)}`;
  }));
}

function smpcView() {
  const N = 241, lgMin = -7, lgMax = -1; // 1e-5 and 1e-4 fall on grid points
  const xs = Array.from({ length: N }, (_, i) => 10 ** (lgMin + (i * (lgMax - lgMin)) / (N - 1)));
  const out = $("smpc-out");
  const kOf = (v) => (+v === 11 ? 0 : +v);
  bind(["smpc-eta", "smpc-k"], guarded(out, () => {
    const eta = +$("smpc-eta").value, k = kOf($("smpc-k").value);
    const ys = Array.from(smpc_curve(eta, k, 0.01, 600, lgMin, lgMax, N));
    const ref = Array.from(smpc_curve(eta, 0, 0.01, 600, lgMin, lgMax, N));
    plot($("smpc"), xs, [{ ys: ref, color: "#bbb" }, { ys, color: "#1f5fbf" }], { logX: true, xLabel: "N_S" });
    const at = (lg) => ys[Math.round(((lg - lgMin) / (lgMax - lgMin)) * (N - 1))];
    out.textContent =
      `limit 2η        ${fmt(2 * eta)}\n` +
      `F at N_S = 1e-5 ${fmt(at(-5))}\n` +
      `F at N_S = 1e-4 ${fmt(at(-4))}\n` +
      `grey: unbounded K`;
  }), { "smpc-k": (v) => (kOf(v) === 0 ? "∞" : v) });
}

await init();
tmstView();
coopView();
smpcView();
