// Build the bindings first: wasm-pack build crates/web --target web --out-dir www/pkg
import init, { generate, kernelize, solve, edgeColor } from "./pkg/edgekernel_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
const PALETTE = ["#999", "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
  "#42d4f4", "#f032e6", "#9a6324", "#469990", "#808000", "#000075"];

function colorOf(x) {
  return x === 0 ? PALETTE[0] : PALETTE[1 + ((x - 1) % (PALETTE.length - 1))];
}

// graph: {n, edges}; labels: optional [[a, b, color]]; kept: optional vertex ids
function draw(graph, labels, kept) {
  const svg = $("view");
  svg.replaceChildren();
  const n = Math.max(graph.n, 1);
  const pos = [...Array(graph.n).keys()].map((i) => {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    return [260 + 220 * Math.cos(a), 260 + 220 * Math.sin(a)];
  });
  const color = new Map((labels || []).map(([a, b, x]) => [a + "," + b, x]));
  const keep = kept ? new Set(kept) : null;
  for (const [a, b] of graph.edges) {
    const line = document.createElementNS(SVG, "line");
    const x = color.get(a + "," + b);
    const faded = keep && !(keep.has(a) && keep.has(b));
    line.setAttribute("x1", pos[a][0]);
    line.setAttribute("y1", pos[a][1]);
    line.setAttribute("x2", pos[b][0]);
    line.setAttribute("y2", pos[b][1]);
    line.setAttribute("stroke", x === undefined ? "#555" : colorOf(x));
    line.setAttribute("stroke-width", x === undefined || x > 0 ? 2 : 1);
    if (x === 0) line.setAttribute("stroke-dasharray", "4 3");
    if (faded) line.setAttribute("opacity", 0.15);
    svg.append(line);
  }
  pos.forEach(([x, y], i) => {
    const c = document.createElementNS(SVG, "circle");
    c.setAttribute("cx", x);
    c.setAttribute("cy", y);
    c.setAttribute("r", 9);
    c.setAttribute("fill", keep && !keep.has(i) ? "#eee" : "#fff");
    c.setAttribute("stroke", "#333");
    const t = document.createElementNS(SVG, "text");
    t.setAttribute("x", x);
    t.setAttribute("y", y + 4);
    t.setAttribute("text-anchor", "middle");
    t.setAttribute("font-size", 10);
    t.textContent = i + 1;
    svg.append(c, t);
  });
}

function show(json, render) {
  const v = JSON.parse(json);
  $("status").className = v.error ? "err" : "";
  if (v.error) {
    $("status").textContent = v.error;
    return;
  }
  render(v);
}

$("gen").onclick = () => show(
  generate($("kind").value, +$("n").value, +$("p").value, +$("c").value,
    BigInt($("k").value), BigInt($("seed").value)),
  (v) => {
    $("text").value = v.text;
    draw(v.graph);
    $("status").textContent = `${v.graph.edges.length} edges`;
    $("out").textContent = "";
  });

$("kern").onclick = () => show(kernelize($("text").value, $("param").value), (v) => {
  const s = v.stats;
  draw(v.input, null, v.kept);
  $("status").textContent =
    `decision ${s.decision}: ${s.n_in}/${s.m_in} → ${s.n_out}/${s.m_out} vertices/edges, ` +
    `k ${s.k_in} → ${s.k_out}, bound ${s.bound} (${s.bound_holds ? "holds" : "exceeded"})`;
  $("out").textContent = v.reduced_text + "\n" +
    v.trace.map((a) => `${a.rule} vertices [${a.vertices.map((x) => x + 1)}] Δk=${a.k_delta}`).join("\n");
});

$("solve").onclick = () => show(solve($("text").value), (v) => {
  draw(v.graph, v.labeling);
  $("status").textContent = `${v.answer}: minimum ${v.min_weak} weak edges (dashed)`;
  $("out").textContent = v.labeling.map(([a, b, x]) => `c ${a + 1} ${b + 1} ${x}`).join("\n");
});

$("color").onclick = () => show(edgeColor($("text").value), (v) => {
  draw(v.graph, v.labeling);
  $("status").textContent = `proper coloring with ${v.used} of ${v.colors} colors`;
  $("out").textContent = v.labeling.map(([a, b, x]) => `c ${a + 1} ${b + 1} ${x}`).join("\n");
});

await init();
$("gen").click();
