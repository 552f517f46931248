pub mod braided;
pub mod cyclotomic;
pub mod freefield;
pub mod nichols;
pub mod rational;
pub mod report;
pub mod ydmod;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    pub struct Cyclotomic;
    #[doc = include_str!("../../../book/src/braided.md")]
    pub struct Braided;
    #[doc = include_str!("../../../book/src/nichols.md")]
    pub struct Nichols;
    #[doc = include_str!("../../../book/src/ydmod.md")]
    pub struct Ydmod;
    #[doc = include_str!("../../../book/src/freefield.md")]
    pub struct Freefield;
    #[doc = include_str!("../../../book/src/octuplet.md")]
    pub struct Octuplet;
}
