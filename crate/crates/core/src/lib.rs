pub mod algebra;
pub mod format;
pub mod fuchsian;
pub mod pcurvature;
pub mod tuples;
