import init, { analyze, semigroupStrip, figure1Points } from "./pkg/lsqlab_web.js";

const $ = (id) => document.getElementById(id);

function guard(out, fn) {
  try {
    out.classList.remove("err");
    fn();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

function runAnalyze(ev) {
  ev?.preventDefault();
  const out = $("analyze-out");
  guard(out, () => { out.textContent = analyze(Number($("analyze-n").value)); });
}

const COLORS = ["#eee", "#8ab", "#246"];

function runStrip(ev) {
  ev?.preventDefault();
  const out = $("strip-out");
  const canvas = $("strip");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  guard(out, () => {
    const data = semigroupStrip(Number($("strip-n").value));
    const [fg, f4, syl] = data;
    const codes = data.subarray(3);
    out.textContent = `F(Γ) = ${fg}\nlargest gap with at most four squares = ${f4}\nSylvester bound = ${syl}`;
    // wrap the strip into rows so that large n still fit
    const cols = Math.min(codes.length, 300);
    const rows = Math.ceil(codes.length / cols);
    const cell = Math.max(1, Math.floor(Math.min(canvas.width / cols, canvas.height / rows)));
    for (let m = 0; m < codes.length; m++) {
      ctx.fillStyle = COLORS[codes[m]];
      ctx.fillRect((m % cols) * cell, Math.floor(m / cols) * cell, cell, cell);
    }
  });
}

const SERIES = [
  { col: 1, label: "F(Γn)", color: "#246" },
  { col: 2, label: "four squares", color: "#c60" },
  { col: 3, label: "46n²", color: "#999", dash: [6, 4] },
  { col: 4, label: "64n²", color: "#bbb", dash: [2, 3] },
];

function runFigure(ev) {
  ev?.preventDefault();
  const canvas = $("fig");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let flat;
  try {
    flat = figure1Points(Number($("fig-n").value));
  } catch (e) {
    ctx.fillStyle = "#b00";
    ctx.fillText(String(e.message ?? e), 20, 20);
    return;
  }
  const rows = [];
  for (let i = 0; i < flat.length; i += 5) rows.push(flat.subarray(i, i + 5));
  const pad = 50;
  const maxN = rows[rows.length - 1][0];
  const maxY = Math.max(...rows.map((r) => r[4]));
  const x = (n) => pad + ((n - 2) / Math.max(1, maxN - 2)) * (canvas.width - 2 * pad);
  const y = (v) => canvas.height - pad - (v / maxY) * (canvas.height - 2 * pad);

  ctx.strokeStyle = "#000";
  ctx.setLineDash([]);
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, canvas.height - pad);
  ctx.lineTo(canvas.width - pad, canvas.height - pad);
  ctx.stroke();
  ctx.fillStyle = "#000";
  ctx.fillText("n", canvas.width - pad + 8, canvas.height - pad + 4);
  ctx.fillText(String(maxN), x(maxN) - 8, canvas.height - pad + 16);
  ctx.fillText(String(maxY), 4, pad);

  SERIES.forEach((s, i) => {
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dash ?? []);
    ctx.beginPath();
    rows.forEach((r, j) => (j ? ctx.lineTo : ctx.moveTo).call(ctx, x(r[0]), y(r[s.col])));
    ctx.stroke();
    ctx.fillStyle = s.color;
    ctx.fillText(s.label, pad + 10, pad + 14 * i);
  });
}

await init();
$("analyze-form").addEventListener("submit", runAnalyze);
$("strip-form").addEventListener("submit", runStrip);
$("fig-form").addEventListener("submit", runFigure);
runAnalyze();
runStrip();
runFigure();
