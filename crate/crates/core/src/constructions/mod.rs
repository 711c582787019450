pub mod c_ring;
pub mod check;
pub mod fearing;
pub mod maltsev;
pub mod preorder_ring;
pub mod sandwich;
pub mod simple_full;
pub mod two_gen;
