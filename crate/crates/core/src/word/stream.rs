use super::{Letter, WordError, WordSpec};

/// Restartable producer of `w_cursor, w_cursor+1, ...`.
///
/// Streams are deterministic: two streams over the same spec yield the same
/// letter at every index, whatever index they were started or sought to.
#[derive(Clone, Debug)]
pub struct WordStream {
    spec: WordSpec,
    cursor: u64,
    state: State,
}

#[derive(Clone, Debug)]
enum State {
    Plain,
    /// `floor(cursor * alpha + rho)`, once known.
    Mechanical(Option<u64>),
    Perturbed {
        base: Box<WordStream>,
        next_flip: usize,
    },
}

impl WordStream {
    pub fn new(spec: WordSpec, start: u64) -> Result<Self, WordError> {
        if start == 0 {
            return Err(WordError::ZeroIndex);
        }
        let state = match &spec {
            WordSpec::Constant(_) | WordSpec::Fibonacci => State::Plain,
            WordSpec::Mechanical(_) => State::Mechanical(None),
            WordSpec::Perturbed { base, flips } => State::Perturbed {
                base: Box::new(WordStream::new((**base).clone(), start)?),
                next_flip: flips.partition_point(|&f| f < start),
            },
        };
        Ok(WordStream { spec, cursor: start, state })
    }

    pub fn spec(&self) -> &WordSpec {
        &self.spec
    }

    /// Index of the next letter to be produced.
    pub fn cursor(&self) -> u64 {
        self.cursor
    }

    pub fn seek(&mut self, index: u64) -> Result<(), WordError> {
        *self = WordStream::new(self.spec.clone(), index)?;
        Ok(())
    }

    fn advance(&mut self) -> Result<Letter, WordError> {
        let n = self.cursor;
        let letter = match (&self.spec, &mut self.state) {
            (WordSpec::Mechanical(m), State::Mechanical(prev)) => {
                let lo = match *prev {
                    Some(v) => v,
                    None => m.floor_at(n)?,
                };
                let hi = m.floor_at(n + 1)?;
                *prev = Some(hi);
                m.code(hi - lo)
            }
            (WordSpec::Perturbed { flips, .. }, State::Perturbed { base, next_flip }) => {
                let l = base.advance()?;
                if flips.get(*next_flip) == Some(&n) {
                    *next_flip += 1;
                    l.flipped()
                } else {
                    l
                }
            }
            (spec, _) => spec.letter_at(n)?,
        };
        self.cursor += 1;
        Ok(letter)
    }
}

impl Iterator for WordStream {
    type Item = Result<Letter, WordError>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.advance())
    }
}
