use super::{Presentation, PresentationError};

const STATIC: &[(&str, &str)] = &[
    ("G4", include_str!("../../data/presentations/G4.pres")),
    ("G12", include_str!("../../data/presentations/G12.pres")),
    ("G26", include_str!("../../data/presentations/G26.pres")),
    (
        "G26-parabolic-s2t",
        include_str!("../../data/presentations/G26-parabolic-s2t.pres"),
    ),
    (
        "G12-nil",
        include_str!("../../data/presentations/G12-nil.pres"),
    ),
    (
        "G12-idem",
        include_str!("../../data/presentations/G12-idem.pres"),
    ),
    (
        "G422-AB-nil",
        include_str!("../../data/presentations/G422-AB-nil.pres"),
    ),
];

pub const CATALOGUE_HELP: &str =
    "G4, G12, G26, G26-parabolic-s2t, Gd12(d), G4-nil(m), G12-nil, G12-idem, \
Gd12-nil(d), G422-AB-nil";

/// Names of the fixed catalogue entries plus one instance of each
/// parameterized family.
pub fn catalogue_names() -> Vec<&'static str> {
    let mut names: Vec<&str> = STATIC.iter().map(|(n, _)| *n).collect();
    names.extend([
        "Gd12(3)",
        "Gd12(2)",
        "Gd12(4)",
        "G4-nil(0)",
        "G4-nil(2)",
        "Gd12-nil",
        "Gd12-nil(4)",
    ]);
    names
}

/// Looks up a presentation by name. Parameterized families are written
/// `Gd12(d)`, `G4-nil(m)` and `Gd12-nil(d)`; `Gd12-nil` means `d = 3`.
pub fn catalogue(name: &str) -> Result<Presentation, PresentationError> {
    if let Some((_, text)) = STATIC.iter().find(|(n, _)| *n == name) {
        return Presentation::parse(text);
    }
    let unknown = || PresentationError::UnknownName(name.to_owned());
    let (family, arg) = match name.split_once('(') {
        Some((f, rest)) => {
            let arg = rest.strip_suffix(')').ok_or_else(unknown)?;
            (f, Some(arg.trim().parse::<i64>().map_err(|_| unknown())?))
        }
        None => (name, None),
    };
    let text = match (family, arg) {
        ("Gd12", Some(d)) => ariki_koike(d)?,
        ("G4-nil", Some(m)) => g4_scalar_cube(m),
        ("Gd12-nil", d) => {
            let d = d.unwrap_or(3);
            if d < 3 {
                return Err(PresentationError::BadRank(d));
            }
            gd12_nil(d)
        }
        _ => return Err(unknown()),
    };
    let mut p = Presentation::parse(&text)?;
    p.name = name.to_owned();
    Ok(p)
}

/// `stst = tsts`, `t^d = a0 + … + a_{d−1} t^{d−1}`, `s^2 = alpha s + beta`.
fn ariki_koike(d: i64) -> Result<String, PresentationError> {
    if d < 2 {
        return Err(PresentationError::BadRank(d));
    }
    let avars: Vec<String> = (0..d).map(|i| format!("a{i}")).collect();
    Ok(format!(
        "name Gd12\nring {} alpha beta\ninvertible a0 beta\ngenerators t s\n\
         braid s t s t = t s t s\norder t {}\norder s beta, alpha\n",
        avars.join(" "),
        avars.join(", ")
    ))
}

/// `s1 s2 s1 = s2 s1 s2`, `s1^3 = s2^3 = m`.
fn g4_scalar_cube(m: i64) -> String {
    let flag = if m.abs() == 1 {
        ""
    } else {
        "flag non_unital_constant\n"
    };
    format!("name G4-nil\nring\ngenerators s1 s2\n{flag}braid s1 s2 s1 = s2 s1 s2\norder s1 {m}, 0, 0\norder s2 {m}, 0, 0\n")
}

/// `stst = tsts`, `t^d = 0`, `s^2 = s`.
fn gd12_nil(d: i64) -> String {
    let zeros = vec!["0"; d as usize].join(", ");
    format!(
        "name Gd12-nil\nring\ngenerators t s\nflag non_unital_constant\nbraid s t s t = t s t s\n\
         order t {zeros}\norder s 0, 1\n"
    )
}
