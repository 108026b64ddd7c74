//! Monodromy groups of the 27 lines on cubic surfaces and of the 9 flexes
//! of plane cubics, computed by homotopy continuation and certified with
//! exact permutation-group algorithms.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod homotopy;
pub mod linesolver;
pub mod numeric;
pub mod permgrp;
pub mod schlafli;
pub mod surfaces;
pub mod tracker;
pub mod monodromy;
pub mod flexes;
