//! The four orbit matrices of 2-(47,23,11) designs under `C6` with orbit
//! sizes `(1,2,2,3,3,6,6,6,6,6,6)` whose designs span near-extremal codes.

pub const SIZES: [usize; 11] = [1, 2, 2, 3, 3, 6, 6, 6, 6, 6, 6];

pub const OM1: [[usize; 11]; 11] = [
    [0, 2, 0, 3, 0, 6, 6, 6, 0, 0, 0],
    [1, 2, 2, 0, 0, 6, 3, 0, 3, 3, 3],
    [0, 2, 0, 0, 3, 3, 3, 3, 6, 3, 0],
    [1, 2, 2, 3, 3, 2, 2, 2, 2, 2, 2],
    [0, 2, 0, 3, 0, 2, 2, 2, 4, 4, 4],
    [1, 1, 1, 1, 1, 2, 3, 4, 2, 5, 2],
    [1, 1, 1, 1, 1, 2, 3, 4, 4, 1, 4],
    [1, 0, 0, 2, 2, 4, 3, 2, 3, 3, 3],
    [0, 0, 2, 2, 1, 3, 3, 3, 4, 3, 2],
    [0, 1, 1, 1, 2, 2, 5, 2, 2, 3, 4],
    [0, 1, 1, 1, 2, 4, 1, 4, 2, 3, 4],
];

pub const OM2: [[usize; 11]; 11] = [
    [0, 2, 0, 3, 0, 6, 6, 6, 0, 0, 0],
    [1, 2, 2, 0, 0, 6, 3, 0, 3, 3, 3],
    [0, 2, 0, 0, 3, 3, 3, 3, 6, 3, 0],
    [1, 2, 2, 3, 3, 2, 2, 2, 2, 2, 2],
    [0, 2, 0, 3, 0, 2, 2, 2, 4, 4, 4],
    [1, 1, 1, 1, 1, 3, 1, 5, 3, 3, 3],
    [1, 1, 1, 1, 1, 1, 5, 3, 3, 3, 3],
    [1, 0, 0, 2, 2, 4, 3, 2, 3, 3, 3],
    [0, 0, 2, 2, 1, 3, 3, 3, 4, 3, 2],
    [0, 1, 1, 1, 2, 3, 3, 3, 3, 1, 5],
    [0, 1, 1, 1, 2, 3, 3, 3, 1, 5, 3],
];

pub const OM3: [[usize; 11]; 11] = [
    [0, 2, 0, 3, 0, 6, 6, 6, 0, 0, 0],
    [1, 2, 2, 0, 0, 3, 3, 3, 6, 3, 0],
    [0, 2, 0, 0, 3, 6, 3, 0, 3, 3, 3],
    [1, 2, 2, 3, 3, 2, 2, 2, 2, 2, 2],
    [0, 2, 0, 3, 0, 2, 2, 2, 4, 4, 4],
    [1, 1, 1, 1, 1, 2, 5, 2, 2, 3, 4],
    [1, 1, 1, 1, 1, 4, 1, 4, 2, 3, 4],
    [1, 0, 0, 2, 2, 3, 3, 3, 4, 3, 2],
    [0, 0, 2, 2, 1, 4, 3, 2, 3, 3, 3],
    [0, 1, 1, 1, 2, 2, 3, 4, 2, 5, 2],
    [0, 1, 1, 1, 2, 2, 3, 4, 4, 1, 4],
];

pub const OM4: [[usize; 11]; 11] = [
    [0, 2, 0, 3, 0, 6, 6, 6, 0, 0, 0],
    [1, 2, 2, 0, 0, 3, 3, 3, 6, 3, 0],
    [0, 2, 0, 0, 3, 6, 3, 0, 3, 3, 3],
    [1, 2, 2, 3, 3, 2, 2, 2, 2, 2, 2],
    [0, 2, 0, 3, 0, 2, 2, 2, 4, 4, 4],
    [1, 1, 1, 1, 1, 3, 3, 3, 3, 1, 5],
    [1, 1, 1, 1, 1, 3, 3, 3, 1, 5, 3],
    [1, 0, 0, 2, 2, 3, 3, 3, 4, 3, 2],
    [0, 0, 2, 2, 1, 4, 3, 2, 3, 3, 3],
    [0, 1, 1, 1, 2, 3, 1, 5, 3, 3, 3],
    [0, 1, 1, 1, 2, 1, 5, 3, 3, 3, 3],
];
