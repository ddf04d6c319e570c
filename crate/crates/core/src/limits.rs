/// Practical size bounds. The theory places no limits on rank or size,
/// so these are configuration, not mathematics.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_rank: usize,
    pub max_flags: usize,
    /// `two_power` refuses inputs with more vertices than this unless overridden.
    pub max_two_power_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: 6,
            max_flags: 1 << 20,
            max_two_power_vertices: 16,
        }
    }
}
