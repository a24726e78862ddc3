import init, { generate, exact, run_method } from "./pkg/cheeger_wasm.js";

const $ = (id) => document.getElementById(id);
const view = $("view");
const trace = $("trace");
let graph = null;

function status(text) {
  $("status").textContent = text;
}

function draw(side) {
  const ctx = view.getContext("2d");
  const { width: w, height: h } = view;
  ctx.clearRect(0, 0, w, h);
  if (!graph) return;
  const inS = new Set(side || []);
  const pos = graph.layout.map(([x, y]) => [20 + x * (w - 40), 20 + y * (h - 40)]);
  for (const [u, v] of graph.edges) {
    const cut = side && inS.has(u) !== inS.has(v);
    ctx.setLineDash(cut ? [5, 4] : []);
    ctx.strokeStyle = cut ? "#999" : "#444";
    ctx.beginPath();
    ctx.moveTo(...pos[u]);
    ctx.lineTo(...pos[v]);
    ctx.stroke();
  }
  ctx.setLineDash([]);
  pos.forEach(([x, y], i) => {
    ctx.fillStyle = !side ? "#777" : inS.has(i) ? "#d9534f" : "#5b8def";
    ctx.beginPath();
    ctx.arc(x, y, 7, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#000";
    ctx.fillText(String(i), x + 8, y - 8);
  });
}

function drawTrace(lambdas) {
  const ctx = trace.getContext("2d");
  const { width: w, height: h } = trace;
  ctx.clearRect(0, 0, w, h);
  if (!lambdas || lambdas.length === 0) return;
  const hi = Math.max(...lambdas);
  const lo = Math.min(...lambdas);
  const span = hi - lo || 1;
  const x = (k) => 40 + (k * (w - 60)) / Math.max(lambdas.length - 1, 1);
  const y = (v) => h - 20 - ((v - lo) / span) * (h - 40);
  ctx.strokeStyle = "#333";
  ctx.beginPath();
  lambdas.forEach((v, k) => (k ? ctx.lineTo(x(k), y(v)) : ctx.moveTo(x(k), y(v))));
  ctx.stroke();
  ctx.fillStyle = "#000";
  lambdas.forEach((v, k) => ctx.fillText(v.toFixed(4), x(k) - 12, y(v) - 6));
  ctx.fillText("lambda per iteration", 4, 12);
}

function guard(fn) {
  try {
    fn();
  } catch (e) {
    status(String(e.message || e));
  }
}

function onGenerate() {
  guard(() => {
    graph = JSON.parse(generate($("family").value, Number($("size").value)));
    status(`${graph.name}: ${graph.n} vertices, ${graph.edges.length} edges`);
    draw(null);
    drawTrace(null);
  });
}

function onExact() {
  guard(() => {
    if (!graph) onGenerate();
    const r = JSON.parse(exact(JSON.stringify(graph)));
    status(`h = ${r.h} (${r.h_float.toFixed(6)}), ${r.optimal_cuts} optimal cut(s); showing one`);
    draw(r.side);
  });
}

function onRun() {
  guard(() => {
    if (!graph) onGenerate();
    const r = JSON.parse(
      run_method(JSON.stringify(graph), $("method").value, $("init").value, BigInt($("seed").value), BigInt($("index").value)),
    );
    status(
      `${r.method}: h~ = ${r.h} (${r.h_float.toFixed(6)}) after ${r.iterations} iteration(s), stopped by ${r.termination}\n` +
        `start side {${r.initial_side.join(", ")}}`,
    );
    draw(r.side);
    drawTrace(r.lambdas);
  });
}

await init();
$("gen").addEventListener("click", onGenerate);
$("exact").addEventListener("click", onExact);
$("run").addEventListener("click", onRun);
$("family").addEventListener("change", () => {
  if ($("family").value === "petersen") $("size").value = 10;
  onGenerate();
});
onGenerate();
