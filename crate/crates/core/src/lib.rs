pub mod channel;
pub mod grid;
pub mod linkbudget;
pub mod ofdm;
pub mod rng;
pub mod semcodec;
pub mod kbstore;
pub mod metrics;
pub mod scenario;
pub mod agent;
pub mod pipeline;
