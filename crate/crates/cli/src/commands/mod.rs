pub mod dump;
pub mod enumerate;
pub mod measures;
pub mod simulate;
pub mod table1;
