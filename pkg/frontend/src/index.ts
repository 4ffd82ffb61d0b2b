export { Client, ServiceError } from "./client"
export { Workbench } from "./controller"
export { hitTest, renderScene } from "./layout"
export type { ArrowOverlay, Badge, Region, Scene } from "./layout"
export { mountScene, wireEvents } from "./dom"
export type {
  BoundariesJson,
  DetourJson,
  NetJson,
  SessionJson,
  StepJson,
} from "./types"
