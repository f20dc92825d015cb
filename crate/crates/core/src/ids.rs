use std::fmt;
use std::str::FromStr;

/// User identifier, rendered as `U<n>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UserId(pub u32);

/// Fog server identifier, rendered as `F<n>`. Ordering is numeric, so the
/// "lowest fid" selection policy is well defined even past F9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FogId(pub u32);

/// Error for id tokens that are not `U<n>` / `F<n>`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected an id like '{prefix}7', got '{token}'")]
pub struct ParseIdError {
    pub prefix: char,
    pub token: String,
}

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U{}", self.0)
    }
}

impl fmt::Display for FogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

fn parse_id(token: &str, prefix: char) -> Result<u32, ParseIdError> {
    let err = || ParseIdError {
        prefix,
        token: token.to_string(),
    };
    let digits = token.strip_prefix(prefix).ok_or_else(err)?;
    digits.parse::<u32>().map_err(|_| err())
}

impl FromStr for UserId {
    type Err = ParseIdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_id(s, 'U').map(UserId)
    }
}

impl FromStr for FogId {
    type Err = ParseIdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_id(s, 'F').map(FogId)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_round_trip() {
        let uid: UserId = "U12".parse().unwrap();
        assert_eq!(uid, UserId(12));
        assert_eq!(uid.to_string(), "U12");
        let fid: FogId = "F3".parse().unwrap();
        assert_eq!(fid.to_string(), "F3");
    }

    #[test]
    fn bad_tokens_rejected() {
        assert!("F3".parse::<UserId>().is_err());
        assert!("U".parse::<UserId>().is_err());
        assert!("U-1".parse::<UserId>().is_err());
        assert!("fog1".parse::<FogId>().is_err());
    }

    #[test]
    fn fog_ordering_is_numeric() {
        assert!(FogId(2) < FogId(10));
    }
}
