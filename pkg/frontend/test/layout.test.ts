import { describe, expect, it } from "vitest"

import { hitTest, renderScene } from "../src/layout"
import { EditStateJson, NetJson } from "../src/types"

// The modus ponens proof object (Fig. 1b shape): statement a ∧ (a ⇒ b)
// with the deiteration, the collapse and the final deletion recorded.
const fig1b: NetJson = {
  nodes: [
    { id: "n0", label: "a" },
    { id: "n1" },
    { id: "n2", label: "a" },
    { id: "n3" },
    { id: "n4", label: "b" },
  ],
  edges: [
    ["n1", "n2"],
    ["n1", "n3"],
    ["n3", "n4"],
  ],
  attachments: [["n1", "n3"]],
  justifications: [["n0", "n2"]],
  selfJustifications: ["n0"],
  expansions: [],
  collapses: [["n1", "n3"]],
}

const editState: EditStateJson = {
  opened: [],
  closed: ["n1"],
  introduced: [],
  eliminated: ["n0", "n2"],
}

describe("renderScene", () => {
  const scene = renderScene(fig1b, editState, [{ node: "n1", kind: "ii" }])

  it("creates one region per structure node", () => {
    expect(scene.regions.map((r) => r.node).sort()).toEqual([
      "n0",
      "n1",
      "n2",
      "n3",
      "n4",
    ])
  })

  it("nests children inside their parents", () => {
    const byId = new Map(scene.regions.map((r) => [r.node, r]))
    for (const r of scene.regions) {
      if (r.parent === null) continue
      const p = byId.get(r.parent)!
      expect(r.x).toBeGreaterThanOrEqual(p.x)
      expect(r.y).toBeGreaterThanOrEqual(p.y)
      expect(r.x + r.width).toBeLessThanOrEqual(p.x + p.width)
      expect(r.y + r.height).toBeLessThanOrEqual(p.y + p.height)
    }
  })

  it("shades by polarity: white even depth, gray odd", () => {
    const byId = new Map(scene.regions.map((r) => [r.node, r]))
    expect(byId.get("n0")!.shade).toBe("white")
    expect(byId.get("n1")!.shade).toBe("white")
    expect(byId.get("n2")!.shade).toBe("gray")
    expect(byId.get("n3")!.shade).toBe("gray")
    expect(byId.get("n4")!.shade).toBe("white")
  })

  it("packs the inloop rightmost, touching the junction", () => {
    const byId = new Map(scene.regions.map((r) => [r.node, r]))
    const outloop = byId.get("n1")!
    const inloop = byId.get("n3")!
    const atom = byId.get("n2")!
    expect(inloop.x).toBeGreaterThan(atom.x)
    expect(outloop.junction).toBeDefined()
    expect(outloop.junction!.x).toBeGreaterThan(inloop.x + inloop.width - 1)
  })

  it("overlays one arrow per recorded transformation", () => {
    const kinds = scene.arrows.map((a) => a.kind).sort()
    expect(kinds).toEqual(["collapse", "justification", "selfJustification"])
    const just = scene.arrows.find((a) => a.kind === "justification")!
    expect(just.from).toBe("n0")
    expect(just.to).toBe("n2")
  })

  it("places detour badges on their regions", () => {
    expect(scene.badges).toHaveLength(1)
    expect(scene.badges[0].node).toBe("n1")
    expect(scene.badges[0].kind).toBe("ii")
  })

  it("hit-tests the innermost region", () => {
    const byId = new Map(scene.regions.map((r) => [r.node, r]))
    const atom = byId.get("n2")!
    const hit = hitTest(scene, atom.x + atom.width / 2, atom.y + atom.height / 2)
    expect(hit?.node).toBe("n2")
  })
})

describe("sharing layout", () => {
  // Fig. 5 shape: atom b under two inloops.
  const shared: NetJson = {
    nodes: [
      { id: "o1" },
      { id: "i1" },
      { id: "a", label: "a" },
      { id: "b", label: "b" },
      { id: "o2" },
      { id: "i2" },
      { id: "c", label: "c" },
    ],
    edges: [
      ["o1", "i1"],
      ["i1", "a"],
      ["i1", "b"],
      ["o2", "i2"],
      ["i2", "b"],
      ["i2", "c"],
    ],
    attachments: [
      ["o1", "i1"],
      ["o2", "i2"],
    ],
    justifications: [],
    selfJustifications: [],
    expansions: [["o2", "i2"]],
    collapses: [["o1", "i1"]],
  }
  const scene = renderScene(
    shared,
    { opened: ["o2"], closed: ["o1"], introduced: [], eliminated: [] },
  )

  it("still renders exactly one region per node", () => {
    expect(scene.regions).toHaveLength(7)
  })

  it("records the second inloop parent on the shared atom", () => {
    const b = scene.regions.find((r) => r.node === "b")!
    expect(b.parent).toBe("i1")
    expect(b.extraParents).toEqual(["i2"])
  })

  it("marks expansion and collapse overlays separately", () => {
    const kinds = scene.arrows.map((a) => a.kind).sort()
    expect(kinds).toEqual(["collapse", "expansion"])
  })
})
