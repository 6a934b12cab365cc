// Self-checks for the oracle infrastructure itself.
mod common;
