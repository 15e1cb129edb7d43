use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(alloc::format!($($arg)*)) };
}
macro_rules! unsupported {
    ($($arg:tt)*) => { $crate::error::Error::Unsupported(alloc::format!($($arg)*)) };
}
macro_rules! inconsistent {
    ($($arg:tt)*) => { $crate::error::Error::Consistency(alloc::format!($($arg)*)) };
}
pub(crate) use {domain, inconsistent, unsupported};
