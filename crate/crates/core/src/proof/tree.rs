use std::fmt;
use std::str::FromStr;

use super::formula::Sequent;
use crate::syntax::Notation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    /// Natural deduction for ∧, ⊃; hypotheses form a set.
    Nd,
    /// Sequent calculus for ∧, ⊃ with explicit structural rules.
    Gentzen,
    /// Linear sequent calculus for ⊗, ⊸, &, !; hypotheses form a multiset.
    Linear,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Nd => "nd",
            System::Gentzen => "gentzen",
            System::Linear => "linear",
        })
    }
}

impl FromStr for System {
    type Err = String;
    fn from_str(s: &str) -> Result<System, String> {
        match s {
            "nd" => Ok(System::Nd),
            "gentzen" => Ok(System::Gentzen),
            "linear" => Ok(System::Linear),
            other => Err(format!("unknown proof system `{other}`")),
        }
    }
}

/// Rule applied at a proof node, with the data needed to check it
/// deterministically. Indices point into the conclusion's hypotheses
/// (into the premise for [`ProofRule::Exch`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProofRule {
    // natural deduction
    NdId(usize),
    AndIntro,
    AndElim1,
    AndElim2,
    ImpIntro,
    ImpElim,
    // Gentzen and linear
    Id,
    Cut,
    // Gentzen
    Exch(usize),
    Contr,
    Weak,
    AndR,
    AndL,
    ImpR,
    ImpL,
    // linear
    TensorR,
    TensorL(usize),
    LolliR,
    LolliL(usize),
    LolliE,
    WithR,
    WithL1(usize),
    WithL2(usize),
    BangL(usize),
    BangR,
    BangWeak(usize),
    BangContr(usize),
}

impl ProofRule {
    pub fn token(self) -> String {
        let (name, idx) = match self {
            ProofRule::NdId(i) => ("id", Some(i)),
            ProofRule::AndIntro => ("and-i", None),
            ProofRule::AndElim1 => ("and-e1", None),
            ProofRule::AndElim2 => ("and-e2", None),
            ProofRule::ImpIntro => ("imp-i", None),
            ProofRule::ImpElim => ("imp-e", None),
            ProofRule::Id => ("id", None),
            ProofRule::Cut => ("cut", None),
            ProofRule::Exch(i) => ("exch", Some(i)),
            ProofRule::Contr => ("contr", None),
            ProofRule::Weak => ("weak", None),
            ProofRule::AndR => ("and-r", None),
            ProofRule::AndL => ("and-l", None),
            ProofRule::ImpR => ("imp-r", None),
            ProofRule::ImpL => ("imp-l", None),
            ProofRule::TensorR => ("tensor-r", None),
            ProofRule::TensorL(i) => ("tensor-l", Some(i)),
            ProofRule::LolliR => ("lolli-r", None),
            ProofRule::LolliL(i) => ("lolli-l", Some(i)),
            ProofRule::LolliE => ("lolli-e", None),
            ProofRule::WithR => ("with-r", None),
            ProofRule::WithL1(i) => ("with-l1", Some(i)),
            ProofRule::WithL2(i) => ("with-l2", Some(i)),
            ProofRule::BangL(i) => ("bang-l", Some(i)),
            ProofRule::BangR => ("bang-r", None),
            ProofRule::BangWeak(i) => ("weak", Some(i)),
            ProofRule::BangContr(i) => ("contr", Some(i)),
        };
        match idx {
            Some(i) => format!("{name}:{i}"),
            None => name.to_string(),
        }
    }

    pub fn from_token(tok: &str) -> Option<ProofRule> {
        let (name, idx) = match tok.split_once(':') {
            Some((n, i)) => (n, Some(i.parse::<usize>().ok()?)),
            None => (tok, None),
        };
        Some(match (name, idx) {
            ("id", Some(i)) => ProofRule::NdId(i),
            ("and-i", None) => ProofRule::AndIntro,
            ("and-e1", None) => ProofRule::AndElim1,
            ("and-e2", None) => ProofRule::AndElim2,
            ("imp-i", None) => ProofRule::ImpIntro,
            ("imp-e", None) => ProofRule::ImpElim,
            ("id", None) => ProofRule::Id,
            ("cut", None) => ProofRule::Cut,
            ("exch", Some(i)) => ProofRule::Exch(i),
            ("contr", None) => ProofRule::Contr,
            ("weak", None) => ProofRule::Weak,
            ("and-r", None) => ProofRule::AndR,
            ("and-l", None) => ProofRule::AndL,
            ("imp-r", None) => ProofRule::ImpR,
            ("imp-l", None) => ProofRule::ImpL,
            ("tensor-r", None) => ProofRule::TensorR,
            ("tensor-l", Some(i)) => ProofRule::TensorL(i),
            ("lolli-r", None) => ProofRule::LolliR,
            ("lolli-l", Some(i)) => ProofRule::LolliL(i),
            ("lolli-e", None) => ProofRule::LolliE,
            ("with-r", None) => ProofRule::WithR,
            ("with-l1", Some(i)) => ProofRule::WithL1(i),
            ("with-l2", Some(i)) => ProofRule::WithL2(i),
            ("bang-l", Some(i)) => ProofRule::BangL(i),
            ("bang-r", None) => ProofRule::BangR,
            ("weak", Some(i)) => ProofRule::BangWeak(i),
            ("contr", Some(i)) => ProofRule::BangContr(i),
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            ProofRule::NdId(_) | ProofRule::Id => 0,
            ProofRule::AndIntro
            | ProofRule::ImpElim
            | ProofRule::Cut
            | ProofRule::AndR
            | ProofRule::ImpL
            | ProofRule::TensorR
            | ProofRule::LolliL(_)
            | ProofRule::LolliE
            | ProofRule::WithR => 2,
            _ => 1,
        }
    }

    pub fn systems(self) -> &'static [System] {
        match self {
            ProofRule::NdId(_)
            | ProofRule::AndIntro
            | ProofRule::AndElim1
            | ProofRule::AndElim2
            | ProofRule::ImpIntro
            | ProofRule::ImpElim => &[System::Nd],
            ProofRule::Id | ProofRule::Cut => &[System::Gentzen, System::Linear],
            ProofRule::Exch(_)
            | ProofRule::Contr
            | ProofRule::Weak
            | ProofRule::AndR
            | ProofRule::AndL
            | ProofRule::ImpR
            | ProofRule::ImpL => &[System::Gentzen],
            _ => &[System::Linear],
        }
    }

    /// The hypothesis index carried by the rule, if any.
    pub fn index(self) -> Option<usize> {
        match self {
            ProofRule::NdId(i)
            | ProofRule::Exch(i)
            | ProofRule::TensorL(i)
            | ProofRule::LolliL(i)
            | ProofRule::WithL1(i)
            | ProofRule::WithL2(i)
            | ProofRule::BangL(i)
            | ProofRule::BangWeak(i)
            | ProofRule::BangContr(i) => Some(i),
            _ => None,
        }
    }

    pub fn with_index(self, i: usize) -> ProofRule {
        match self {
            ProofRule::NdId(_) => ProofRule::NdId(i),
            ProofRule::Exch(_) => ProofRule::Exch(i),
            ProofRule::TensorL(_) => ProofRule::TensorL(i),
            ProofRule::LolliL(_) => ProofRule::LolliL(i),
            ProofRule::WithL1(_) => ProofRule::WithL1(i),
            ProofRule::WithL2(_) => ProofRule::WithL2(i),
            ProofRule::BangL(_) => ProofRule::BangL(i),
            ProofRule::BangWeak(_) => ProofRule::BangWeak(i),
            ProofRule::BangContr(_) => ProofRule::BangContr(i),
            r => r,
        }
    }

    pub fn is_bang_rule(self) -> bool {
        matches!(
            self,
            ProofRule::BangL(_) | ProofRule::BangR | ProofRule::BangWeak(_) | ProofRule::BangContr(_)
        )
    }
}

impl fmt::Display for ProofRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofTree {
    pub rule: ProofRule,
    pub sequent: Sequent,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn new(rule: ProofRule, sequent: Sequent, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree {
            rule,
            sequent,
            premises,
        }
    }

    pub fn leaf(rule: ProofRule, sequent: Sequent) -> ProofTree {
        ProofTree::new(rule, sequent, Vec::new())
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    pub fn any_rule(&self, pred: &impl Fn(ProofRule) -> bool) -> bool {
        pred(self.rule) || self.premises.iter().any(|p| p.any_rule(pred))
    }

    pub fn is_cut_free(&self) -> bool {
        !self.any_rule(&|r| r == ProofRule::Cut)
    }

    /// Move a linear proof to a permutation of its conclusion. Premises
    /// are untouched; only the root's hypothesis index follows its formula.
    pub fn retarget(mut self, s: &Sequent) -> ProofTree {
        if let Some(i) = self.rule.index() {
            let f = &self.sequent.hyps[i];
            let j = s.hyps.iter().position(|g| g == f).expect("same multiset");
            self.rule = self.rule.with_index(j);
        }
        self.sequent = s.clone();
        self
    }

    /// Indented rendering, one node per line: `rule  sequent`.
    pub fn render(&self, n: Notation) -> String {
        let mut out = String::new();
        self.render_into(n, 0, &mut out);
        out
    }

    fn render_into(&self, n: Notation, indent: usize, out: &mut String) {
        out.push_str(&" ".repeat(indent));
        out.push_str(&self.rule.token());
        out.push_str("  ");
        out.push_str(&self.sequent.display(n));
        out.push('\n');
        for p in &self.premises {
            p.render_into(n, indent + 2, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        let rules = [
            ProofRule::NdId(3),
            ProofRule::AndIntro,
            ProofRule::Id,
            ProofRule::Exch(1),
            ProofRule::Contr,
            ProofRule::BangContr(2),
            ProofRule::LolliL(0),
            ProofRule::WithL2(4),
        ];
        for r in rules {
            assert_eq!(ProofRule::from_token(&r.token()), Some(r));
        }
        assert_eq!(ProofRule::from_token("exch"), None);
        assert_eq!(ProofRule::from_token("tensor-l:x"), None);
    }
}
