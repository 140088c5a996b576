/* tslint:disable */
/* eslint-disable */

export function coop_curve(gamma_w: number, eta: number, t_eom_mk: number, go_min: number, go_max: number, points: number): Float64Array;

export function coop_optimum(gamma_w: number, eta: number, t_eom_mk: number): Float64Array;

export function smpc_curve(eta: number, k: number, kappa: number, n_b: number, lg_min: number, lg_max: number, points: number): Float64Array;

export function tmst_curve(nu: number, eta: number, r_max: number, points: number): Float64Array;

export function tmst_optimum(nu: number, eta: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly coop_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly coop_optimum: (a: number, b: number, c: number) => [number, number, number, number];
    readonly smpc_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly tmst_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly tmst_optimum: (a: number, b: number) => [number, number, number, number];
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
