use std::fmt;

/// Process exit statuses.
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_TAGGER: u8 = 3;

/// Marks an error as a usage or configuration problem (exit status 1).
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(message: impl Into<String>) -> anyhow::Error {
    UsageError(message.into()).into()
}

/// Maps an error chain to an exit status. Anything not recognized as a
/// usage or external-tagger failure is a data error.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.chain().any(|cause| cause.is::<UsageError>()) {
        return EXIT_USAGE;
    }
    let tagger_failed = err.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<mct_core::Error>(),
            Some(mct_core::Error::ExternalTagger { .. })
        )
    });
    if tagger_failed {
        EXIT_TAGGER
    } else {
        EXIT_DATA
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use anyhow::Context;

    #[test]
    fn classification() {
        let tagger: anyhow::Result<()> = Err(mct_core::Error::ExternalTagger {
            batch: 3,
            message: "boom".into(),
        }
        .into());
        assert_eq!(exit_code(&tagger.context("article a1").unwrap_err()), EXIT_TAGGER);
        assert_eq!(exit_code(&usage("bad flag").context("outer")), EXIT_USAGE);
        let data: anyhow::Error = mct_core::Error::EmptyTrainingSet.into();
        assert_eq!(exit_code(&data), EXIT_DATA);
    }
}
