/* tslint:disable */
/* eslint-disable */

/**
 * Vertex images, predicates and the abelianisation matrix.
 */
export function analyze_automorphism(graph_spec: string, aut: string): string;

/**
 * Reduced form, reverse, palindrome decision and clique-palindromic form.
 */
export function analyze_word(graph_spec: string, word: string): string;

/**
 * Factorization into standard generators, picking the pipeline from the
 * predicates.
 */
export function factor_automorphism(graph_spec: string, aut: string): string;

/**
 * Names of the built-in graphs with their JSON.
 */
export function fixture_graphs(): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_automorphism: (a: number, b: number, c: number, d: number) => [number, number];
    readonly analyze_word: (a: number, b: number, c: number, d: number) => [number, number];
    readonly factor_automorphism: (a: number, b: number, c: number, d: number) => [number, number];
    readonly fixture_graphs: () => [number, number];
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
