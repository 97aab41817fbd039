//! The code listings of the guide in `book/`, compiled as doctests. One
//! module per chapter so a failing listing points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/model.md")]
pub mod model {}
#[doc = include_str!("../../../book/src/ladder.md")]
pub mod ladder {}
#[doc = include_str!("../../../book/src/closed-form.md")]
pub mod closed_form {}
#[doc = include_str!("../../../book/src/quantization.md")]
pub mod quantization {}
#[doc = include_str!("../../../book/src/degeneracy.md")]
pub mod degeneracy {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
