//! State budgets for exhaustive searches.

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Budget from `HYPERFORGE_BUDGET`, else [`DEFAULT_BUDGET`].
pub fn state_budget() -> u64 {
    parse_budget(std::env::var("HYPERFORGE_BUDGET").ok().as_deref())
}

pub fn parse_budget(v: Option<&str>) -> u64 {
    v.and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}
