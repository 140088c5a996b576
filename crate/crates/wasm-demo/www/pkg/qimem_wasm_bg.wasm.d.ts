/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const coop_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const coop_optimum: (a: number, b: number, c: number) => [number, number, number, number];
export const smpc_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
export const tmst_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const tmst_optimum: (a: number, b: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
