/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_clustersample_free: (a: number, b: number) => void;
export const clustersample_clusters: (a: number) => number;
export const clustersample_labels: (a: number) => [number, number];
export const clustersample_largest: (a: number) => number;
export const clustersample_spans: (a: number) => number;
export const entropy_sequence: (a: number, b: number, c: number) => [number, number, number, number];
export const percolation_sample: (a: number, b: number, c: number) => [number, number, number];
export const walk_counts: (a: number, b: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
