pub mod bp;
pub mod design;
pub mod haar_block;
pub mod vqe_run;
