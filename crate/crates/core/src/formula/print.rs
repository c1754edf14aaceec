use std::fmt;

use super::Formula;

const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;
const ATOMIC: u8 = 6;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Not(_) | Formula::Box(_) => UNARY,
        Formula::Atom(_) | Formula::Bottom | Formula::Top => ATOMIC,
    }
}

pub(super) fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula) -> fmt::Result {
    write_at(out, f, IFF)
}

fn write_at(out: &mut fmt::Formatter<'_>, f: &Formula, min: u8) -> fmt::Result {
    let parens = precedence(f) < min;
    if parens {
        out.write_str("(")?;
    }
    match f {
        Formula::Atom(i) => write!(out, "p{i}")?,
        Formula::Bottom => out.write_str("false")?,
        Formula::Top => out.write_str("true")?,
        Formula::Not(a) => {
            out.write_str("~")?;
            write_at(out, a, UNARY)?;
        }
        Formula::Box(a) => {
            out.write_str("[] ")?;
            write_at(out, a, UNARY)?;
        }
        Formula::And(a, b) => binary(out, a, " & ", b, AND, UNARY)?,
        Formula::Or(a, b) => binary(out, a, " | ", b, OR, AND)?,
        Formula::Implies(a, b) => binary(out, a, " -> ", b, OR, IMPLIES)?,
        Formula::Iff(a, b) => binary(out, a, " <-> ", b, IFF, IMPLIES)?,
    }
    if parens {
        out.write_str(")")?;
    }
    Ok(())
}

fn binary(
    out: &mut fmt::Formatter<'_>,
    a: &Formula,
    op: &str,
    b: &Formula,
    left_min: u8,
    right_min: u8,
) -> fmt::Result {
    write_at(out, a, left_min)?;
    out.write_str(op)?;
    write_at(out, b, right_min)
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(Formula::boxed(Formula::p()).to_string(), "[] p0");
        assert_eq!(
            Formula::implies(Formula::p(), Formula::boxed(Formula::p())).to_string(),
            "p0 -> [] p0"
        );
        assert_eq!(Formula::Bottom.to_string(), "false");
        assert_eq!(
            parse("(p0 -> p1) -> p2").unwrap().to_string(),
            "(p0 -> p1) -> p2"
        );
        assert_eq!(
            parse("p0 -> (p1 -> p2)").unwrap().to_string(),
            "p0 -> p1 -> p2"
        );
        assert_eq!(
            parse("p0 & (p1 & p2)").unwrap().to_string(),
            "p0 & (p1 & p2)"
        );
        assert_eq!(parse("(p0 & p1) & p2").unwrap().to_string(), "p0 & p1 & p2");
        assert_eq!(
            parse("~(p0 | [](p1))").unwrap().to_string(),
            "~(p0 | [] p1)"
        );
        assert_eq!(parse("<>p0").unwrap().to_string(), "~[] ~p0");
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            (0u32..4).prop_map(Formula::Atom),
            Just(Formula::Top),
            Just(Formula::Bottom),
        ];
        leaf.prop_recursive(8, 64, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                inner.clone().prop_map(Formula::boxed),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_print(f in arb_formula()) {
            prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
        }
    }
}
