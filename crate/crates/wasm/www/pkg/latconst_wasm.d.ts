/* tslint:disable */
/* eslint-disable */

/**
 * A random site configuration of the free n x n grid, labelled by cluster.
 */
export class ClusterSample {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    clusters(): number;
    /**
     * Row-major labels, 0 for an empty site.
     */
    labels(): Uint32Array;
    largest(): number;
    /**
     * Whether some cluster touches both the left and right columns.
     */
    spans(): boolean;
}

/**
 * Finite-size entropy sequence and its extrapolation, as JSON.
 */
export function entropy_sequence(model: string, n_max: number): string;

export function percolation_sample(n: number, p: number, seed: number): ClusterSample;

/**
 * Self-avoiding walk counts c(0..=n_max) as decimal strings, JSON encoded.
 */
export function walk_counts(dim: number, n_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_clustersample_free: (a: number, b: number) => void;
    readonly clustersample_clusters: (a: number) => number;
    readonly clustersample_labels: (a: number) => [number, number];
    readonly clustersample_largest: (a: number) => number;
    readonly clustersample_spans: (a: number) => number;
    readonly entropy_sequence: (a: number, b: number, c: number) => [number, number, number, number];
    readonly percolation_sample: (a: number, b: number, c: number) => [number, number, number];
    readonly walk_counts: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
