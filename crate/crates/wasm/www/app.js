// Glue for the hand-rolled wasm ABI: JSON strings through linear memory.
// Entry points take (request_ptr, request_len, response_slot_ptr); the slot
// receives two little-endian u32 words (response ptr, response len).

"use strict";

let wasm = null;

const enc = new TextEncoder();
const dec = new TextDecoder();

async function boot() {
  const status = document.getElementById("status");
  try {
    const res = await fetch("bufferknap_wasm.wasm");
    const { instance } = await WebAssembly.instantiate(await res.arrayBuffer(), {});
    wasm = instance.exports;
    status.textContent = "wasm ready — everything below computes exactly, in your tab.";
  } catch (e) {
    status.innerHTML =
      '<span class="err">could not load bufferknap_wasm.wasm</span> — build it with ' +
      "<code>cargo build -p bufferknap-wasm --release --target wasm32-unknown-unknown</code> " +
      "and copy it next to index.html, then serve this directory over HTTP.";
    console.error(e);
  }
}

function call(entry, requestObj) {
  if (!wasm) throw new Error("wasm not loaded");
  const request = enc.encode(JSON.stringify(requestObj));
  const reqPtr = wasm.bk_alloc(request.length);
  new Uint8Array(wasm.memory.buffer, reqPtr, request.length).set(request);
  const slotPtr = wasm.bk_alloc(8);
  wasm[entry](reqPtr, request.length, slotPtr);
  const slot = new Uint32Array(wasm.memory.buffer, slotPtr, 2);
  const [resPtr, resLen] = [slot[0], slot[1]];
  const text = dec.decode(new Uint8Array(wasm.memory.buffer, resPtr, resLen));
  wasm.bk_free(reqPtr, request.length);
  wasm.bk_free(resPtr, resLen);
  wasm.bk_free(slotPtr, 8);
  const parsed = JSON.parse(text);
  if (parsed.error) throw new Error(parsed.error);
  return parsed;
}

// ---------------------------------------------------------------- curves --

function plotCurves() {
  const info = document.getElementById("curveInfo");
  try {
    const data = call("bk_bound_table", {
      variant: document.getElementById("curveVariant").value,
      r_min: document.getElementById("curveMin").value,
      r_max: document.getElementById("curveMax").value,
      steps: 240,
    });
    drawCurves(data.rows);
    const finite = data.rows.filter((r) => r.upper !== "inf");
    info.textContent =
      finite.length === 0
        ? "no bounded regime on this range"
        : `plotted ${data.rows.length} grid points; algorithms on this range: ` +
          [...new Set(data.rows.map((r) => r.algorithm).filter(Boolean))].join(", ");
  } catch (e) {
    info.innerHTML = `<span class="err">${e.message}</span>`;
  }
}

function drawCurves(rows) {
  const canvas = document.getElementById("curveCanvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const pts = rows
    .map((row) => ({
      r: parseFloat(row.r),
      lo: row.lower === "inf" ? null : parseFloat(row.lower),
      hi: row.upper === "inf" ? null : parseFloat(row.upper),
      alg: row.algorithm,
    }))
    .filter((p) => !Number.isNaN(p.r));
  const ys = pts.flatMap((p) => [p.lo, p.hi]).filter((y) => y !== null && y < 50);
  if (ys.length === 0) return;
  const [x0, x1] = [pts[0].r, pts[pts.length - 1].r];
  const [y0, y1] = [Math.min(...ys) - 0.02, Math.max(...ys) + 0.02];
  const L = 56, R = 12, T = 10, B = 30;
  const sx = (x) => L + ((x - x0) / (x1 - x0 || 1)) * (canvas.width - L - R);
  const sy = (y) => canvas.height - B - ((y - y0) / (y1 - y0 || 1)) * (canvas.height - T - B);

  ctx.strokeStyle = "#d7dde3";
  ctx.fillStyle = "#68737f";
  ctx.font = "11px system-ui";
  for (let i = 0; i <= 5; i++) {
    const y = y0 + ((y1 - y0) * i) / 5;
    ctx.beginPath(); ctx.moveTo(L, sy(y)); ctx.lineTo(canvas.width - R, sy(y)); ctx.stroke();
    ctx.fillText(y.toFixed(3), 6, sy(y) + 4);
    const x = x0 + ((x1 - x0) * i) / 5;
    ctx.fillText("R=" + x.toFixed(3), sx(x) - 18, canvas.height - 10);
  }
  const draw = (key, color) => {
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    let pen = false;
    for (const p of pts) {
      const y = p[key];
      if (y === null || y > 50) { pen = false; continue; }
      if (!pen) { ctx.moveTo(sx(p.r), sy(y)); pen = true; }
      else ctx.lineTo(sx(p.r), sy(y));
    }
    ctx.stroke();
  };
  draw("hi", "#0a6fb8");
  draw("lo", "#c0392b");
  // regime boundaries: mark where the owning algorithm changes
  let last = null;
  ctx.strokeStyle = "#b9c2cb";
  ctx.setLineDash([4, 4]);
  for (const p of pts) {
    if (last && p.alg !== last) {
      ctx.beginPath(); ctx.moveTo(sx(p.r), T); ctx.lineTo(sx(p.r), canvas.height - B); ctx.stroke();
    }
    last = p.alg;
  }
  ctx.setLineDash([]);
}

// ------------------------------------------------------------- playground --

function renderRounds(target, items, rounds, capacityHint) {
  const maxSize = Math.max(capacityHint, 1e-9);
  const holder = document.createElement("div");
  holder.className = "rounds";
  rounds.forEach((round, i) => {
    const row = document.createElement("div");
    row.className = "round";
    const label = document.createElement("div");
    label.className = "roundlabel";
    label.textContent = i === 0 ? "B₀" : `B${i}`;
    const bar = document.createElement("div");
    bar.className = "bar";
    let offset = 0;
    for (const idx of round) {
      const size = parseFloat(items[idx - 1].size);
      const chunk = document.createElement("div");
      chunk.className = "chunk" + (idx === i ? " new" : "");
      chunk.style.left = (offset / maxSize) * 100 + "%";
      chunk.style.width = Math.max((size / maxSize) * 100 - 0.15, 0.3) + "%";
      chunk.title = `item ${idx}: size ${items[idx - 1].size}, value ${items[idx - 1].value}`;
      bar.appendChild(chunk);
      offset += size;
    }
    row.appendChild(label);
    row.appendChild(bar);
    holder.appendChild(row);
  });
  target.appendChild(holder);
}

function runSimulation() {
  const out = document.getElementById("simOut");
  out.innerHTML = "";
  try {
    const instance = JSON.parse(document.getElementById("simInstance").value);
    const data = call("bk_simulate", {
      instance,
      alg: document.getElementById("simAlg").value,
    });
    const rep = data.report;
    const verdict = rep.within_bound
      ? '<span class="verdict ok">within bound</span>'
      : '<span class="verdict bad">BOUND VIOLATION</span>';
    out.innerHTML =
      `<pre>algorithm ${rep.algorithm_id} at effective R = ${trim(rep.effective_R)}\n` +
      `ALG = ${rep.alg_value}   OPT = ${rep.opt_value}   ratio = ${trim(rep.ratio)}\n` +
      `bound = ${trim(rep.theoretical_bound)}  (${rep.guaranteed_regime ? "proven regime" : "unguaranteed regime"})  ${verdict}</pre>`;
    renderRounds(out, data.items, data.rounds, parseFloat(instance.R.includes("/")
      ? instance.R.split("/").reduce((a, b) => a / b)
      : instance.R));
  } catch (e) {
    out.innerHTML = `<pre class="err">${e.message}</pre>`;
  }
}

// ----------------------------------------------------------------- duels --

function runDuel() {
  const out = document.getElementById("duelOut");
  out.innerHTML = "";
  try {
    const data = call("bk_duel", {
      kind: document.getElementById("duelKind").value,
      r: document.getElementById("duelR").value,
      eps: document.getElementById("duelEps").value,
      alg: document.getElementById("duelAlg").value,
    });
    const rep = data.report;
    const verdict = rep.achieved
      ? '<span class="verdict ok">bound realized</span>'
      : '<span class="verdict bad">bound NOT realized</span>';
    out.innerHTML =
      `<pre>${rep.kind} emitted ${rep.items} items against ${rep.algorithm_id}\n` +
      `ALG = ${rep.alg_value}   OPT = ${rep.opt_value}   ratio = ${trim(rep.ratio)}\n` +
      `theorem bound = ${trim(rep.theorem_bound)} − 2ε   ${verdict}</pre>`;
    if (data.rounds.length <= 64) {
      renderRounds(out, data.items, data.rounds, parseFloat(rationalToFloat(rep.R)));
      const list = data.items
        .map((it, i) => `e${i + 1}: size ${it.size}`)
        .join("   ");
      out.insertAdjacentHTML("beforeend", `<pre class="muted">${list}</pre>`);
    } else {
      out.insertAdjacentHTML(
        "beforeend",
        `<pre class="muted">${data.rounds.length - 1} rounds (too many to draw)</pre>`
      );
    }
  } catch (e) {
    out.innerHTML = `<pre class="err">${e.message}</pre>`;
  }
}

function rationalToFloat(text) {
  if (text.includes("/")) {
    const [p, q] = text.split("/");
    return parseFloat(p) / parseFloat(q);
  }
  return parseFloat(text);
}

function trim(decimalText) {
  if (!decimalText || decimalText === "inf") return "inf";
  const m = decimalText.match(/^(-?\d+\.\d{1,8})/);
  return m ? m[1] + "…" : decimalText;
}

document.getElementById("curveGo").addEventListener("click", plotCurves);
document.getElementById("simGo").addEventListener("click", runSimulation);
document.getElementById("duelGo").addEventListener("click", runDuel);
boot().then(() => {
  if (wasm) plotCurves();
});
