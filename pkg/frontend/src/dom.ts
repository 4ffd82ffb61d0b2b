// SVG mounting for a scene. Tests assert on the scene structure, not
// on pixels; this module is the thin browser-only skin.

import { hitTest, Scene } from "./layout"
import { Workbench } from "./controller"
import { StepJson } from "./types"

const SVG_NS = "http://www.w3.org/2000/svg"

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name)
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v)
  return node
}

export function mountScene(scene: Scene, svg: SVGSVGElement): void {
  svg.innerHTML = ""
  for (const r of scene.regions) {
    const ellipse = el("ellipse", {
      cx: String(r.x + r.width / 2),
      cy: String(r.y + r.height / 2),
      rx: String(r.width / 2),
      ry: String(r.height / 2),
      fill: r.shade === "gray" ? "#d5d5d5" : "#ffffff",
      stroke: scene.selection === r.node ? "#2266dd" : "#333333",
      "data-node": r.node,
    })
    svg.appendChild(ellipse)
    if (r.label !== undefined) {
      const text = el("text", {
        x: String(r.x + r.width / 2),
        y: String(r.y + r.height / 2 + 4),
        "text-anchor": "middle",
        "data-label-for": r.node,
      })
      text.textContent = r.label
      svg.appendChild(text)
    }
    if (r.junction) {
      svg.appendChild(
        el("circle", {
          cx: String(r.junction.x),
          cy: String(r.junction.y),
          r: "4",
          fill: "#e67e22",
          "data-junction-for": r.node,
        }),
      )
    }
  }
  for (const a of scene.arrows) {
    const d =
      a.path.length === 4
        ? `M ${a.path[0].x} ${a.path[0].y} C ${a.path[1].x} ${a.path[1].y}, ` +
          `${a.path[2].x} ${a.path[2].y}, ${a.path[3].x} ${a.path[3].y}`
        : "M " + a.path.map((p) => `${p.x} ${p.y}`).join(" L ")
    svg.appendChild(
      el("path", {
        d,
        fill: "none",
        stroke: a.kind === "justification" ? "#2266dd" : "#333333",
        "data-arrow": a.kind,
        "data-from": a.from,
        "data-to": a.to,
      }),
    )
  }
  for (const b of scene.badges) {
    const badge = el("circle", {
      cx: String(b.x),
      cy: String(b.y),
      r: "7",
      fill: "#cc3344",
      "data-detour": b.node,
      "data-kind": b.kind,
    })
    svg.appendChild(badge)
  }
}

export function wireEvents(
  svg: SVGSVGElement,
  workbench: Workbench,
  showMenu: (steps: StepJson[], x: number, y: number) => void,
): void {
  svg.addEventListener("click", async (ev) => {
    const rect = svg.getBoundingClientRect()
    const x = ev.clientX - rect.left
    const y = ev.clientY - rect.top
    const target = ev.target as Element
    const detour = target.getAttribute("data-detour")
    if (detour !== null) {
      await workbench.reduceDetour(detour)
      mountScene(workbench.scene(), svg)
      return
    }
    const region = hitTest(workbench.scene(), x, y)
    if (region !== null) {
      const steps = await workbench.onClick(region.node)
      mountScene(workbench.scene(), svg)
      showMenu(steps, x, y)
    }
  })
  document.addEventListener("keydown", async (ev) => {
    if ((ev.ctrlKey || ev.metaKey) && ev.key === "z") {
      await workbench.undo()
      mountScene(workbench.scene(), svg)
    }
  })
}
