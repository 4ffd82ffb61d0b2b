// ViewModel: nested ellipse regions with polarity shading plus arrow
// overlays, computed purely from session JSON. Children pack left to
// right; the inloop sits rightmost, touching its outloop at the orange
// junction point, matching the conventions of the kernel's source
// figures. No kernel logic lives here: applicability, boundaries and
// detours all come from the service.

import { DetourJson, EditStateJson, NetJson, NodeId } from "./types"

export type Shade = "white" | "gray"

export interface Region {
  node: NodeId
  label?: string
  shade: Shade
  x: number
  y: number
  width: number
  height: number
  depth: number
  parent: NodeId | null
  /** extra (shared-inloop) parents beyond the layout parent */
  extraParents: NodeId[]
  /** orange attachment junction, present on outloops */
  junction?: { x: number; y: number }
}

export type ArrowKind =
  | "justification"
  | "selfJustification"
  | "expansion"
  | "collapse"

export interface ArrowOverlay {
  kind: ArrowKind
  from: NodeId
  to: NodeId
  /** cubic control polygon, routed above the diagram */
  path: { x: number; y: number }[]
}

export interface Badge {
  node: NodeId
  kind: string
  x: number
  y: number
}

export interface Scene {
  regions: Region[]
  arrows: ArrowOverlay[]
  badges: Badge[]
  selection: NodeId | null
}

const LEAF_WIDTH = 48
const LEAF_HEIGHT = 32
const PAD = 14
const GAP = 10

interface Tree {
  children: Map<NodeId, NodeId[]>
  parents: Map<NodeId, NodeId[]>
  roots: NodeId[]
  inloopOf: Map<NodeId, NodeId>
  labels: Map<NodeId, string>
}

function buildTree(net: NetJson): Tree {
  const children = new Map<NodeId, NodeId[]>()
  const parents = new Map<NodeId, NodeId[]>()
  const labels = new Map<NodeId, string>()
  for (const n of net.nodes) {
    children.set(n.id, [])
    parents.set(n.id, [])
    if (n.label !== undefined) labels.set(n.id, n.label)
  }
  for (const [p, c] of [...net.edges].sort()) {
    children.get(p)!.push(c)
    parents.get(c)!.push(p)
  }
  const inloopOf = new Map<NodeId, NodeId>()
  for (const [o, i] of net.attachments) inloopOf.set(o, i)
  const roots = net.nodes
    .map((n) => n.id)
    .filter((id) => parents.get(id)!.length === 0)
    .sort()
  return { children, parents, roots, inloopOf, labels }
}

export function renderScene(
  net: NetJson,
  editState: EditStateJson,
  detours: DetourJson[] = [],
  selection: NodeId | null = null,
): Scene {
  const tree = buildTree(net)
  const regions = new Map<NodeId, Region>()

  // Sharing: lay every node out under its least parent; other parents
  // are recorded so overlays can reference them.
  const layoutChildren = (id: NodeId): NodeId[] => {
    const out: NodeId[] = []
    for (const c of tree.children.get(id) ?? []) {
      const ps = [...(tree.parents.get(c) ?? [])].sort()
      if (ps[0] === id && !out.includes(c)) out.push(c)
    }
    const inloop = tree.inloopOf.get(id)
    // pack the inloop rightmost
    return out
      .filter((c) => c !== inloop)
      .concat(inloop !== undefined && out.includes(inloop) ? [inloop] : [])
  }

  const measure = (id: NodeId): { w: number; h: number } => {
    const kids = layoutChildren(id)
    if (kids.length === 0) {
      return { w: LEAF_WIDTH, h: LEAF_HEIGHT }
    }
    let w = PAD
    let h = 0
    for (const c of kids) {
      const m = measure(c)
      w += m.w + GAP
      h = Math.max(h, m.h)
    }
    return { w: w - GAP + PAD, h: h + 2 * PAD }
  }

  const place = (
    id: NodeId,
    x: number,
    y: number,
    depth: number,
    parent: NodeId | null,
  ): { w: number; h: number } => {
    const m = measure(id)
    const extraParents = [...(tree.parents.get(id) ?? [])]
      .sort()
      .filter((p) => p !== parent)
    const region: Region = {
      node: id,
      label: tree.labels.get(id),
      shade: depth % 2 === 0 ? "white" : "gray",
      x,
      y,
      width: m.w,
      height: m.h,
      depth,
      parent,
      extraParents,
    }
    const inloop = tree.inloopOf.get(id)
    regions.set(id, region)
    let cx = x + PAD
    for (const c of layoutChildren(id)) {
      const cm = place(c, cx, y + PAD, depth + 1, id)
      cx += cm.w + GAP
    }
    if (inloop !== undefined) {
      const inRegion = regions.get(inloop)
      if (inRegion) {
        // the junction pins the inloop to the outloop wall
        inRegion.x = x + m.w - inRegion.width - PAD / 2
        region.junction = { x: x + m.w - PAD / 2, y: y + m.h / 2 }
      }
    }
    return m
  }

  let cursor = 0
  for (const r of tree.roots) {
    const m = place(r, cursor, 0, 0, null)
    cursor += m.w + 2 * GAP
  }

  const center = (id: NodeId) => {
    const r = regions.get(id)!
    return { x: r.x + r.width / 2, y: r.y + r.height / 2 }
  }

  const arrows: ArrowOverlay[] = []
  const arc = (a: NodeId, b: NodeId) => {
    const p = center(a)
    const q = center(b)
    const lift = 40 + Math.abs(q.x - p.x) / 4
    return [
      p,
      { x: p.x, y: Math.min(p.y, q.y) - lift },
      { x: q.x, y: Math.min(p.y, q.y) - lift },
      q,
    ]
  }
  for (const [a, b] of [...net.justifications].sort()) {
    arrows.push({ kind: "justification", from: a, to: b, path: arc(a, b) })
  }
  for (const v of [...net.selfJustifications].sort()) {
    const p = center(v)
    arrows.push({
      kind: "selfJustification",
      from: v,
      to: v,
      path: [p, { x: p.x - 16, y: p.y - 26 }, { x: p.x + 16, y: p.y - 26 }, p],
    })
  }
  const junctionOf = (o: NodeId) => regions.get(o)?.junction ?? center(o)
  for (const [o, i] of [...net.expansions].sort()) {
    const j = junctionOf(o)
    arrows.push({
      kind: "expansion",
      from: o,
      to: i,
      path: [
        { x: j.x - 12, y: j.y },
        { x: j.x + 12, y: j.y },
      ],
    })
  }
  for (const [o, i] of [...net.collapses].sort()) {
    const j = junctionOf(o)
    arrows.push({
      kind: "collapse",
      from: o,
      to: i,
      path: [
        { x: j.x - 10, y: j.y - 10 },
        { x: j.x + 10, y: j.y + 10 },
        { x: j.x - 10, y: j.y + 10 },
        { x: j.x + 10, y: j.y - 10 },
      ],
    })
  }

  const badges: Badge[] = detours.map((d) => {
    const r = regions.get(d.node)
    return {
      node: d.node,
      kind: d.kind,
      x: r ? r.x + r.width : 0,
      y: r ? r.y : 0,
    }
  })

  // Paint order: parents before children so nesting is honoured.
  const ordered = [...regions.values()].sort(
    (a, b) => a.depth - b.depth || a.x - b.x || a.node.localeCompare(b.node),
  )
  void editState
  return { regions: ordered, arrows, badges, selection }
}

/** The region (innermost first) containing the point, for click routing. */
export function hitTest(scene: Scene, x: number, y: number): Region | null {
  let best: Region | null = null
  for (const r of scene.regions) {
    if (x >= r.x && x <= r.x + r.width && y >= r.y && y <= r.y + r.height) {
      if (best === null || r.depth > best.depth) best = r
    }
  }
  return best
}
