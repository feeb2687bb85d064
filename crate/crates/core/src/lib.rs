pub mod canon;
pub mod classify;
pub mod oracle;
pub mod profile;
pub mod term;
pub mod textio;
