// Workbench controller: session state plus click-to-apply flow. All
// mutations go through the service and are queued so only one is in
// flight at a time; the scene is a pure function of the last session
// payload.

import { Client, ServiceError } from "./client"
import { renderScene, Scene } from "./layout"
import { BoundariesJson, DetourJson, NodeId, SessionJson, StepJson } from "./types"

export interface WorkbenchState {
  session: SessionJson | null
  boundaries: BoundariesJson | null
  detours: DetourJson[]
  selection: NodeId | null
  menu: StepJson[]
  lastError: string | null
}

export class Workbench {
  readonly state: WorkbenchState = {
    session: null,
    boundaries: null,
    detours: [],
    selection: null,
    menu: [],
    lastError: null,
  }
  private queue: Promise<unknown> = Promise.resolve()

  constructor(readonly client: Client) {}

  private enqueue<T>(job: () => Promise<T>): Promise<T> {
    const next = this.queue.then(job, job)
    this.queue = next.catch(() => undefined)
    return next
  }

  private async refresh(session: SessionJson): Promise<void> {
    this.state.session = session
    this.state.boundaries = await this.client.boundaries(session.id)
    this.state.detours = await this.client.detours(session.id)
    this.state.lastError = null
  }

  newFromStructure(structure: unknown): Promise<void> {
    return this.enqueue(async () => {
      await this.refresh(await this.client.createSession({ structure }))
    })
  }

  newFromNet(net: unknown): Promise<void> {
    return this.enqueue(async () => {
      await this.refresh(await this.client.createSession({ net }))
    })
  }

  newFromStlc(term: string): Promise<void> {
    return this.enqueue(async () => {
      await this.refresh(await this.client.createSession({ stlc: term }))
    })
  }

  /** Click a region: select it and fetch the step menu for that node. */
  onClick(node: NodeId): Promise<StepJson[]> {
    return this.enqueue(async () => {
      const session = this.requireSession()
      this.state.selection = node
      this.state.menu = await this.client.applicable(session.id, node)
      return this.state.menu
    })
  }

  applyChoice(step: StepJson): Promise<void> {
    return this.enqueue(async () => {
      const session = this.requireSession()
      try {
        await this.refresh(await this.client.apply(session.id, step))
        this.state.selection = null
        this.state.menu = []
      } catch (e) {
        if (e instanceof ServiceError && e.status === 409) {
          this.state.lastError = e.body.premiss ?? e.message
          return
        }
        throw e
      }
    })
  }

  undo(): Promise<void> {
    return this.enqueue(async () => {
      const session = this.requireSession()
      try {
        await this.refresh(await this.client.undo(session.id))
      } catch (e) {
        if (e instanceof ServiceError && e.status === 409) {
          this.state.lastError = "nothing to undo"
          return
        }
        throw e
      }
    })
  }

  reduceDetour(node: NodeId): Promise<void> {
    return this.enqueue(async () => {
      const session = this.requireSession()
      try {
        await this.refresh(await this.client.reduce(session.id, node))
      } catch (e) {
        if (e instanceof ServiceError && e.status === 409) {
          this.state.lastError = e.body.error ?? "reduction blocked"
          return
        }
        throw e
      }
    })
  }

  exportJson(): Promise<string> {
    return this.enqueue(async () => {
      return this.client.exportNet(this.requireSession().id)
    })
  }

  scene(): Scene {
    const session = this.state.session
    if (session === null) {
      return { regions: [], arrows: [], badges: [], selection: null }
    }
    return renderScene(
      session.net,
      session.editState,
      this.state.detours,
      this.state.selection,
    )
  }

  private requireSession(): SessionJson {
    if (this.state.session === null) throw new Error("no active session")
    return this.state.session
  }
}
