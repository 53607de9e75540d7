import { Camera, Viewport, worldToScreen } from "./camera.js";
import { menuLayout } from "./input.js";
import type { Draw } from "./render.js";

// Paints a draw list onto a 2D canvas. Pure presentation: colors, glyph
// sizes, text. Anything that affects WHAT is shown belongs in render.ts.

const ROBOT_COLORS: Record<string, string> = {
  Idle: "#8d96a0",
  Navigating: "#49c26b",
  Blocked: "#e05545",
  Recovered: "#e0a93d",
};

export function paint(ctx: CanvasRenderingContext2D, vp: Viewport, cam: Camera, draws: Draw[]): void {
  let toastRow = 0;
  for (const d of draws) {
    switch (d.kind) {
      case "clear":
        ctx.fillStyle = "#181b20";
        ctx.fillRect(0, 0, vp.width, vp.height);
        break;
      case "dim":
        ctx.fillStyle = `rgba(0,0,0,${d.level})`;
        ctx.fillRect(0, 0, vp.width, vp.height);
        break;
      case "chunk": {
        ctx.beginPath();
        for (const [a, b, c] of d.triangles) {
          const pa = worldToScreen(cam, vp, a[0], a[2]);
          const pb = worldToScreen(cam, vp, b[0], b[2]);
          const pc = worldToScreen(cam, vp, c[0], c[2]);
          ctx.moveTo(pa[0], pa[1]);
          ctx.lineTo(pb[0], pb[1]);
          ctx.lineTo(pc[0], pc[1]);
          ctx.closePath();
        }
        if (d.style === "fill") {
          ctx.fillStyle = d.material === "transparent" ? "rgba(120,180,220,0.25)" : "#3d444c";
          ctx.fill();
          ctx.strokeStyle = "rgba(255,255,255,0.08)";
          ctx.lineWidth = 1;
          ctx.stroke();
        } else {
          ctx.strokeStyle = "#9aa3ad";
          ctx.lineWidth = 1;
          ctx.stroke();
        }
        break;
      }
      case "cellTint": {
        const [sx, sy] = worldToScreen(cam, vp, d.x, d.z);
        const px = d.size * cam.pxPerMeter;
        ctx.fillStyle = "rgba(80,200,120,0.30)";
        ctx.fillRect(sx, sy, px, px);
        break;
      }
      case "pathSegment":
        line(ctx, cam, vp, d.x1, d.z1, d.x2, d.z2, "#4a8df0", 3);
        break;
      case "goalMarker": {
        const [sx, sy] = worldToScreen(cam, vp, d.x, d.z);
        ctx.strokeStyle = "#b070e8";
        ctx.lineWidth = 2.5;
        ctx.beginPath();
        ctx.arc(sx, sy, 8, 0, 2 * Math.PI);
        ctx.stroke();
        ctx.fillStyle = "#b070e8";
        ctx.beginPath();
        ctx.arc(sx, sy, 3, 0, 2 * Math.PI);
        ctx.fill();
        break;
      }
      case "lidarPoint": {
        const [sx, sy] = worldToScreen(cam, vp, d.x, d.z);
        ctx.fillStyle = "#e24545";
        ctx.beginPath();
        ctx.arc(sx, sy, 2.5, 0, 2 * Math.PI);
        ctx.fill();
        break;
      }
      case "beam":
        line(ctx, cam, vp, d.x1, d.z1, d.x2, d.z2, "rgba(255,120,70,0.9)", 2);
        break;
      case "robot": {
        const [sx, sy] = worldToScreen(cam, vp, d.x, d.z);
        const r = Math.max(6, 0.3 * cam.pxPerMeter);
        ctx.save();
        ctx.translate(sx, sy);
        ctx.rotate(d.heading);
        ctx.beginPath();
        ctx.moveTo(r, 0);
        ctx.lineTo(-0.6 * r, 0.55 * r);
        ctx.lineTo(-0.6 * r, -0.55 * r);
        ctx.closePath();
        const color = ROBOT_COLORS[d.mode] ?? "#8d96a0";
        if (d.style === "fill") {
          ctx.fillStyle = color;
          ctx.fill();
        } else {
          ctx.strokeStyle = color;
          ctx.lineWidth = 2;
          ctx.stroke();
        }
        ctx.restore();
        break;
      }
      case "observer": {
        const [sx, sy] = worldToScreen(cam, vp, d.x, d.z);
        ctx.strokeStyle = "#59c2d8";
        ctx.lineWidth = 2;
        ctx.beginPath();
        ctx.arc(sx, sy, 5, 0, 2 * Math.PI);
        ctx.stroke();
        ctx.beginPath();
        ctx.moveTo(sx, sy);
        ctx.lineTo(sx + 12 * Math.cos(d.yaw), sy + 12 * Math.sin(d.yaw));
        ctx.stroke();
        break;
      }
      case "pointerFlash": {
        const [sx, sy] = d.x === null || d.z === null
          ? [vp.width / 2, vp.height / 2]
          : worldToScreen(cam, vp, d.x, d.z as number);
        ctx.strokeStyle = "rgba(230,60,50,0.95)";
        ctx.lineWidth = 3;
        ctx.beginPath();
        ctx.arc(sx, sy, 12, 0, 2 * Math.PI);
        ctx.stroke();
        break;
      }
      case "menu": {
        for (const r of menuLayout(d.entries)) {
          ctx.fillStyle = "rgba(25,28,34,0.92)";
          ctx.fillRect(r.x, r.y, r.w, r.h);
          ctx.strokeStyle = "#59c2d8";
          ctx.lineWidth = 1;
          ctx.strokeRect(r.x, r.y, r.w, r.h);
          ctx.fillStyle = "#e6e9ec";
          ctx.font = "14px sans-serif";
          ctx.textBaseline = "middle";
          ctx.fillText(r.label, r.x + 10, r.y + r.h / 2);
        }
        break;
      }
      case "toast": {
        ctx.fillStyle = "rgba(25,28,34,0.92)";
        const y = vp.height - 34 - toastRow * 30;
        ctx.fillRect(vp.width / 2 - 160, y, 320, 26);
        ctx.fillStyle = "#e6e9ec";
        ctx.font = "13px sans-serif";
        ctx.textAlign = "center";
        ctx.textBaseline = "middle";
        ctx.fillText(d.text, vp.width / 2, y + 13);
        ctx.textAlign = "left";
        toastRow++;
        break;
      }
      case "banner": {
        ctx.fillStyle = "rgba(200,70,60,0.85)";
        ctx.fillRect(0, 0, vp.width, 30);
        ctx.fillStyle = "#fff";
        ctx.font = "14px sans-serif";
        ctx.textAlign = "center";
        ctx.textBaseline = "middle";
        ctx.fillText(d.text, vp.width / 2, 15);
        ctx.textAlign = "left";
        break;
      }
    }
  }
}

function line(
  ctx: CanvasRenderingContext2D,
  cam: Camera,
  vp: Viewport,
  x1: number,
  z1: number,
  x2: number,
  z2: number,
  style: string,
  width: number
): void {
  const a = worldToScreen(cam, vp, x1, z1);
  const b = worldToScreen(cam, vp, x2, z2);
  ctx.strokeStyle = style;
  ctx.lineWidth = width;
  ctx.beginPath();
  ctx.moveTo(a[0], a[1]);
  ctx.lineTo(b[0], b[1]);
  ctx.stroke();
}
