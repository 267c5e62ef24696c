pub mod cli;
pub mod dimreg;
pub mod error;
pub mod oracle;
pub mod schemes;
pub mod series;
pub mod specfun;
