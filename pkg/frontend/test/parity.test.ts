// Workbench parity: drive the Fig. 1 script through the UI controller
// against a live service; the exported session JSON must be
// byte-identical to the CLI `derive` output for the same steps.

import { execFileSync, spawn, ChildProcess } from "node:child_process"
import { mkdtempSync, writeFileSync } from "node:fs"
import { tmpdir } from "node:os"
import { join } from "node:path"
import { afterAll, beforeAll, describe, expect, it } from "vitest"

import { Client } from "../src/client"
import { Workbench } from "../src/controller"
import { StepJson } from "../src/types"

const PORT = 8907
const BASE = `http://127.0.0.1:${PORT}`

const MP_STRUCTURE = {
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
}

const FIG1_SCRIPT: StepJson[] = [
  { rule: "Deiterate", source: "n0", target: "n2" },
  { rule: "ClosePos", outloop: "n1" },
  { rule: "Delete", target: "n0" },
]

let service: ChildProcess

async function waitForService(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const r = await fetch(`${BASE}/sessions/none`)
      if (r.status === 404) return
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100))
  }
  throw new Error("service did not come up")
}

beforeAll(async () => {
  service = spawn(
    "python3",
    ["-m", "scrollnet.cli", "serve", "--port", String(PORT)],
    { stdio: "ignore" },
  )
  await waitForService()
}, 30_000)

afterAll(() => {
  service.kill()
})

describe("workbench parity with the CLI", () => {
  it("Fig. 1 script exports byte-identical JSON", async () => {
    const workbench = new Workbench(new Client(BASE))
    await workbench.newFromStructure(MP_STRUCTURE)
    for (const step of FIG1_SCRIPT) {
      await workbench.applyChoice(step)
      expect(workbench.state.lastError).toBeNull()
    }
    const exported = await workbench.exportJson()

    const dir = mkdtempSync(join(tmpdir(), "scrollnet-"))
    const mpFile = join(dir, "mp.json")
    const scriptFile = join(dir, "steps.json")
    writeFileSync(mpFile, JSON.stringify(MP_STRUCTURE))
    writeFileSync(scriptFile, JSON.stringify(FIG1_SCRIPT))
    const cli = execFileSync(
      "python3",
      ["-m", "scrollnet.cli", "derive", mpFile, "--script", scriptFile],
      { encoding: "utf-8" },
    )
    expect(exported).toBe(cli)
  }, 30_000)

  it("boundary panel follows the derivation", async () => {
    const workbench = new Workbench(new Client(BASE))
    await workbench.newFromStructure(MP_STRUCTURE)
    expect(workbench.state.boundaries?.conclusion).toBe("[a ; b] a")
    for (const step of FIG1_SCRIPT) {
      await workbench.applyChoice(step)
    }
    expect(workbench.state.boundaries?.premiss).toBe("[a ; b] a")
    expect(workbench.state.boundaries?.conclusion).toBe("b")
    expect(workbench.state.boundaries?.conclusionFormula).toBe("b")
  }, 30_000)

  it("menus come from the service and undo is exact", async () => {
    const workbench = new Workbench(new Client(BASE))
    await workbench.newFromStructure(MP_STRUCTURE)
    const before = JSON.stringify(workbench.state.session!.net)
    const menu = await workbench.onClick("n2")
    expect(menu.length).toBeGreaterThan(0)
    const deit = menu.find(
      (s) => s.rule === "Deiterate" && s.source === "n0" && s.target === "n2",
    )
    expect(deit).toBeDefined()
    await workbench.applyChoice(deit!)
    expect(workbench.state.session!.net.justifications).toEqual([["n0", "n2"]])
    await workbench.undo()
    expect(JSON.stringify(workbench.state.session!.net)).toBe(before)
  }, 30_000)

  it("translates λ-terms and reduces detour badges boundary-safely", async () => {
    const workbench = new Workbench(new Client(BASE))
    await workbench.newFromStlc("\\y:a. (\\x:a. x) y")
    const before = workbench.state.boundaries?.conclusion
    expect(workbench.state.detours.length).toBeGreaterThan(0)
    const scene = workbench.scene()
    expect(scene.badges.length).toBe(workbench.state.detours.length)
    for (const badge of scene.badges) {
      await workbench.reduceDetour(badge.node)
      if (workbench.state.lastError === null) break
    }
    expect(workbench.state.boundaries?.conclusion).toBe(before)
  }, 30_000)
})
