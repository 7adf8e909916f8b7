/* tslint:disable */
/* eslint-disable */

/**
 * Statistics of the auxiliary bipartite graph; `istar` is 1-based. Small
 * graphs include `edges` as pairs of `[part, position]`, also 1-based.
 */
export function aux_graph(n: number, ks: string, istar: number, s: number, seed: bigint): string;

/**
 * The lex-prefix frontier between `k_i`- and `k_j`-sets, and the
 * lengths `(m, f[m])` maximizing `m + f[m]` with both parts non-empty.
 */
export function frontier(n: number, k_i: number, k_j: number): string;

/**
 * `g(s)` for `1 <= s <= min(k_2..k_r)` next to the descending-profile bound
 * and the prefix-search optimum.
 */
export function g_curve(n: number, ks: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly aux_graph: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number];
    readonly frontier: (a: number, b: number, c: number) => [number, number];
    readonly g_curve: (a: number, b: number, c: number) => [number, number];
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
