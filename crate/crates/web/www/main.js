import init, { circle_profile, riesz, norm_ladder } from "./pkg/polynorm_web.js";

const $ = (id) => document.getElementById(id);

const presets = {
  exp: { type: "trig", degree: 3, coeffs: [[0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [1, 0]] },
  cos: { type: "trig", degree: 4, coeffs: [[0.5, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0.5, 0]] },
  lax: { type: "alg", degree: 5, coeffs: [32, 80, 80, 40, 10, 1].map((c) => [c / 243, 0]) },
};

function randomPoly(n) {
  const g = () => {
    const u = 1 - Math.random();
    return Math.sqrt(-2 * Math.log(u)) * Math.cos(2 * Math.PI * Math.random());
  };
  const coeffs = Array.from({ length: 2 * n + 1 }, () => [+g().toFixed(3), +g().toFixed(3)]);
  return { type: "trig", degree: n, coeffs };
}

function fmt(v) {
  return Math.abs(v) >= 1e-3 || v === 0 ? v.toPrecision(10) : v.toExponential(4);
}

function drawProfile(p) {
  const c = $("profile");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  const top = Math.max(p.sup, p.sup_derivative / Math.max(p.degree, 1)) * 1.05 || 1;
  const sx = (x) => (x / (2 * Math.PI)) * c.width;
  const sy = (y) => c.height - (y / top) * c.height;
  for (const [key, color] of [["modulus", "#1f77b4"], ["derivative_over_n", "#d62728"]]) {
    ctx.beginPath();
    ctx.strokeStyle = color;
    p.x.forEach((x, i) => (i ? ctx.lineTo(sx(x), sy(p[key][i])) : ctx.moveTo(sx(x), sy(p[key][i]))));
    ctx.stroke();
  }
  ctx.setLineDash([4, 4]);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(0, sy(p.sup));
  ctx.lineTo(c.width, sy(p.sup));
  ctx.stroke();
  ctx.setLineDash([]);
  $("ratio").textContent = fmt(p.ratio);
}

function drawAtoms(r, x) {
  const c = $("atoms");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  const mid = c.height / 2;
  const w = Math.max(...r.weights.map(Math.abs));
  ctx.strokeStyle = "#ccc";
  ctx.beginPath();
  ctx.moveTo(0, mid);
  ctx.lineTo(c.width, mid);
  ctx.stroke();
  r.nodes.forEach((t, i) => {
    const px = (((t + x) % (2 * Math.PI)) / (2 * Math.PI)) * c.width;
    ctx.strokeStyle = r.weights[i] > 0 ? "#2ca02c" : "#9467bd";
    ctx.beginPath();
    ctx.moveTo(px, mid);
    ctx.lineTo(px, mid - (r.weights[i] / w) * (mid - 6));
    ctx.stroke();
  });
  $("riesz").textContent =
    `(T * μ)(x) = ${fmt(r.convolution[0])} ${r.convolution[1] < 0 ? "−" : "+"} ${fmt(Math.abs(r.convolution[1]))}i, ` +
    `T′(x) = ${fmt(r.direct[0])} ${r.direct[1] < 0 ? "−" : "+"} ${fmt(Math.abs(r.direct[1]))}i, ` +
    `residual ${fmt(r.residual)}, total variation ${fmt(r.total_variation)}`;
}

function drawLadder(rows) {
  const body = $("ladder").querySelector("tbody");
  body.innerHTML = "";
  for (const r of rows) {
    const tr = document.createElement("tr");
    for (const v of [r.p, fmt(r.norm), fmt(r.derivative_norm), fmt(r.ratio)]) {
      const td = document.createElement("td");
      td.textContent = v;
      tr.appendChild(td);
    }
    body.appendChild(tr);
  }
}

function updateRiesz() {
  const x = +$("x").value;
  $("xval").textContent = x.toFixed(3);
  try {
    drawAtoms(JSON.parse(riesz($("poly").value, x)), x);
  } catch (e) {
    $("error").textContent = String(e);
  }
}

function update() {
  $("error").textContent = "";
  const poly = $("poly").value;
  try {
    drawProfile(JSON.parse(circle_profile(poly, 1024)));
    drawLadder(JSON.parse(norm_ladder(poly)));
    updateRiesz();
  } catch (e) {
    $("error").textContent = String(e);
  }
}

await init();
$("poly").addEventListener("input", update);
$("x").addEventListener("input", updateRiesz);
document.querySelectorAll("[data-preset]").forEach((b) =>
  b.addEventListener("click", () => {
    $("poly").value = JSON.stringify(presets[b.dataset.preset]);
    update();
  }),
);
$("random").addEventListener("click", () => {
  $("poly").value = JSON.stringify(randomPoly(2 + Math.floor(Math.random() * 6)));
  update();
});
update();
