import init, { derive, encryptAndAnalyze, shiftTerms } from "./pkg/sdree_wasm.js";

const $ = (id) => document.getElementById(id);

const presets = {
  a512: "a".repeat(512),
  one128: "1".repeat(128),
  pal: "a".repeat(38) + "b".repeat(8) + "a".repeat(38),
};

function overrides() {
  return [Number($("code").value) >>> 0, Number($("power-ex").value) >>> 0];
}

function drawHistogram(canvas, counts) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const max = Math.max(1, ...counts);
  const w = width / 256;
  ctx.fillStyle = "#3465a4";
  counts.forEach((c, b) => {
    const h = (c / max) * (height - 4);
    ctx.fillRect(b * w, height - h, Math.max(1, w - 0.5), h);
  });
}

function fmt(v) {
  return v === null ? "undefined" : Number(v).toFixed(6);
}

function stats(r) {
  return `<table>
    <tr><td>bytes</td><td>${r.total}</td><td>distinct</td><td>${r.distinct}</td></tr>
    <tr><td>max run</td><td>${r.max_run}</td><td>IC</td><td>${fmt(r.ic)}</td></tr>
    <tr><td>chi² (uniform)</td><td colspan="3">${fmt(r.chi2)}</td></tr>
  </table>`;
}

function drawTerms(canvas, shifts) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#c4a000";
  const dx = width / Math.max(1, shifts.length);
  shifts.forEach((s, i) => {
    ctx.fillRect(i * dx, height - 2 - (s / 255) * (height - 4), Math.max(2, dx - 1), 2);
  });
}

function update() {
  $("error").textContent = "";
  const key = $("key").value;
  const [code, powerEx] = overrides();
  try {
    if (code && powerEx) {
      $("derive").textContent = "using explicit parameters";
    } else {
      const d = JSON.parse(derive(key));
      $("derive").innerHTML = `csum=${d.csum} pseudo_code=${d.pseudo_code}
        temporary_power_ex=${d.temporary_power_ex}`;
    }

    const r = JSON.parse(encryptAndAnalyze($("plaintext").value, key, code, powerEx));
    const p = r.params;
    $("derive").innerHTML += `<br>code=${p.code} power_ex=${p.power_ex}
      prime_index=${p.prime_index} modulus=${p.modulus}${p.weak ? " <b>(weak key)</b>" : ""}`;
    $("ciphertext").textContent = r.ciphertext_hex;
    drawHistogram($("plain-hist"), r.plaintext.counts);
    drawHistogram($("cipher-hist"), r.ciphertext.counts);
    $("plain-stats").innerHTML = stats(r.plaintext);
    $("cipher-stats").innerHTML = stats(r.ciphertext);

    const t = JSON.parse(shiftTerms(key, code, powerEx, Number($("count").value) >>> 0));
    drawTerms($("terms"), t.byte_shifts);
  } catch (e) {
    $("error").textContent = String(e.message ?? e);
  }
}

await init();
$("preset").addEventListener("change", (e) => {
  if (presets[e.target.value]) {
    $("plaintext").value = presets[e.target.value];
  }
  update();
});
for (const id of ["key", "code", "power-ex", "plaintext", "count"]) {
  $(id).addEventListener("input", update);
}
update();
