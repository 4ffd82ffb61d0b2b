// Thin fetch client for the session service; every method mirrors one
// endpoint and returns the parsed payload.

import {
  BoundariesJson,
  DetourJson,
  NodeId,
  SessionJson,
  StepJson,
} from "./types"

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly body: { error?: string; premiss?: string; rule?: string },
  ) {
    super(body.error ?? `service error ${status}`)
  }
}

async function expectJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let body = {}
    try {
      body = await response.json()
    } catch {
      // keep the bare status
    }
    throw new ServiceError(response.status, body)
  }
  return (await response.json()) as T
}

export class Client {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path
  }

  async createSession(body: {
    structure?: unknown
    net?: unknown
    stlc?: string
  }): Promise<SessionJson> {
    const r = await fetch(this.url("/sessions"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    })
    return expectJson<SessionJson>(r)
  }

  async getSession(id: string): Promise<SessionJson> {
    return expectJson(await fetch(this.url(`/sessions/${id}`)))
  }

  async boundaries(id: string): Promise<BoundariesJson> {
    return expectJson(await fetch(this.url(`/sessions/${id}/boundaries`)))
  }

  async applicable(id: string, node?: NodeId): Promise<StepJson[]> {
    const suffix = node === undefined ? "" : `?node=${encodeURIComponent(node)}`
    return expectJson(await fetch(this.url(`/sessions/${id}/applicable${suffix}`)))
  }

  async apply(id: string, step: StepJson): Promise<SessionJson> {
    const r = await fetch(this.url(`/sessions/${id}/apply`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(step),
    })
    return expectJson<SessionJson>(r)
  }

  async undo(id: string): Promise<SessionJson> {
    const r = await fetch(this.url(`/sessions/${id}/undo`), { method: "POST" })
    return expectJson<SessionJson>(r)
  }

  async detours(id: string): Promise<DetourJson[]> {
    return expectJson(await fetch(this.url(`/sessions/${id}/detours`)))
  }

  async reduce(id: string, node: NodeId): Promise<SessionJson> {
    const r = await fetch(this.url(`/sessions/${id}/reduce`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ node }),
    })
    return expectJson<SessionJson>(r)
  }

  /** Raw export body; byte-identical to the CLI derive output. */
  async exportNet(id: string): Promise<string> {
    const r = await fetch(this.url(`/sessions/${id}/export`))
    if (!r.ok) throw new ServiceError(r.status, await r.json())
    return r.text()
  }

  async correct(id: string): Promise<{ correct: boolean | null }> {
    return expectJson(await fetch(this.url(`/sessions/${id}/correct`)))
  }
}
