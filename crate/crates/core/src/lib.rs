pub mod fock;
pub mod operator;
pub mod partitions;
pub mod rational;
pub mod boson;
pub mod geo;
pub mod glhat;
pub mod model;
pub mod verify;
pub mod word;
