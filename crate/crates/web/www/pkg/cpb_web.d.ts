/* tslint:disable */
/* eslint-disable */

/**
 * Lowest `levels` energies over `steps` gate charges in [-1, 1].
 */
export function charge_dispersion(ec: number, ej: number, steps: number, levels: number): string;

/**
 * Condensate overlap against charge difference, `steps` points in
 * `[0, delta_max]`.
 */
export function cone_scan(n_total: number, n1: number, delta_max: number, steps: number): string;

/**
 * Qubit states of the charge-basis model and the overlap of the matching
 * condensate product states with `n1` pairs on the island out of `n_total`.
 */
export function qubit_contrast(ec: number, ej: number, ng: number, n_total: number, n1: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly charge_dispersion: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly cone_scan: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly qubit_contrast: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
