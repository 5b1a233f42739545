//! Value-list syntax for the --m and --h flags: a single integer, a comma
//! list ("2,3"), or an inclusive range ("2..5").

pub fn parse_values(spec: &str) -> Result<Vec<u64>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("empty value list".into());
    }
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u64 = parse_one(lo)?;
        let hi: u64 = parse_one(hi)?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',').map(parse_one).collect()
}

fn parse_one(s: &str) -> Result<u64, String> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| format!("expected an integer, got {:?}", s.trim()))
}

#[cfg(test)]
mod tests {
    use super::parse_values;

    #[test]
    fn forms() {
        assert_eq!(parse_values("4").unwrap(), vec![4]);
        assert_eq!(parse_values("2,3").unwrap(), vec![2, 3]);
        assert_eq!(parse_values("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_values(" 2 , 5 ").unwrap(), vec![2, 5]);
        assert!(parse_values("").is_err());
        assert!(parse_values("5..2").is_err());
        assert!(parse_values("x").is_err());
    }
}
