/* tslint:disable */
/* eslint-disable */

/**
 * Arrangement text for a family: `braid` uses `a` as n, `coxeterB` and
 * `coxeterD` use `a` as ℓ, `monomial` is G(a, b, c).
 */
export function catalog_text(family: string, a: number, b: number, c: number): string;

/**
 * Freeness verdict with exponents and a Saito-certified basis.
 */
export function freeness(text: string): string;

/**
 * Flats per rank with Möbius values, and the Poincaré polynomial.
 */
export function lattice(text: string): string;

/**
 * Restriction to the flat cut out by `forms` (rows separated by `;`).
 */
export function restrict(text: string, forms: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly catalog_text: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly freeness: (a: number, b: number) => [number, number];
    readonly lattice: (a: number, b: number) => [number, number];
    readonly restrict: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
