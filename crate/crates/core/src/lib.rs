pub mod analyzer;
pub mod dsl;
pub mod opalg;
pub mod param;
pub mod report;
pub mod scalar;
pub mod sphere;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/sphere.md")]
    mod sphere {}
    #[doc = include_str!("../../../book/src/dsl.md")]
    mod dsl {}
    #[doc = include_str!("../../../book/src/analyzer.md")]
    mod analyzer {}
    #[doc = include_str!("../../../book/src/reports.md")]
    mod reports {}
}
