// Wire types mirroring the session service JSON. The workbench never
// computes applicability or boundaries itself; everything comes from
// these payloads.

export type NodeId = string

export interface NetJson {
  nodes: { id: NodeId; label?: string }[]
  edges: [NodeId, NodeId][]
  attachments: [NodeId, NodeId][]
  justifications: [NodeId, NodeId][]
  selfJustifications: NodeId[]
  expansions: [NodeId, NodeId][]
  collapses: [NodeId, NodeId][]
  certificate?: unknown
}

export interface EditStateJson {
  opened: NodeId[]
  closed: NodeId[]
  introduced: NodeId[]
  eliminated: NodeId[]
}

export interface SessionJson {
  id: string
  createdFrom: string
  net: NetJson
  editState: EditStateJson
  complete: boolean
  interpretable: boolean
  historyDepth: number
}

export interface BoundariesJson {
  premiss: string | null
  conclusion: string | null
  premissFormula?: string
  conclusionFormula?: string
}

export interface StepJson {
  rule: string
  targets?: NodeId[]
  parent?: NodeId | null
  payload?: unknown
  fresh?: string | null
  source?: NodeId
  target?: NodeId
  outloop?: NodeId
}

export interface DetourJson {
  node: NodeId
  kind: string
}
