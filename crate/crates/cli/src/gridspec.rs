use lctkit_core::numerics::UniformGrid;

use crate::error::{CliError, CliResult};

/// Parses `start:step:end`. The start is kept exactly; the end is lowered
/// to the last lattice point not beyond it.
pub fn parse_grid(spec: &str) -> CliResult<UniformGrid> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, step, end] = parts.as_slice() else {
        return Err(CliError::usage(format!(
            "grid spec `{spec}` must have the form start:step:end"
        )));
    };
    let number = |s: &str, what: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::usage(format!("grid spec `{spec}`: bad {what} `{s}`")))
    };
    let (start, step, end) = (
        number(start, "start")?,
        number(step, "step")?,
        number(end, "end")?,
    );
    UniformGrid::from_range(start, step, end)
        .map_err(|e| CliError::usage(format!("grid spec `{spec}`: {e}")))
}

pub fn format_grid(grid: &UniformGrid) -> String {
    format!("{}:{}:{}", grid.start(), grid.step(), grid.end())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inclusive_ranges() {
        let g = parse_grid("-8:0.01:8").unwrap();
        assert_eq!(g.count(), 1601);
        assert_eq!(g.start(), -8.0);
        let g = parse_grid("0:0.3:1").unwrap();
        assert_eq!(g.count(), 4);
        assert!((g.end() - 0.9).abs() < 1e-15);
        let back = parse_grid(&format_grid(&g)).unwrap();
        assert_eq!(back.count(), g.count());
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in ["1:2", "a:1:2", "0:-1:3", "0:0:3", "3:1:0", ""] {
            let err = parse_grid(bad).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{bad}");
        }
    }
}
