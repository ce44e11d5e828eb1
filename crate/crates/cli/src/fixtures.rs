//! Bundled category and representation files, addressable as `fixture:NAME`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Category,
    Representation,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Category => "category",
            Kind::Representation => "representation",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: Kind,
    pub description: &'static str,
    pub text: &'static str,
}

macro_rules! fixture {
    ($name:literal, $kind:ident, $description:literal) => {
        Fixture {
            name: $name,
            kind: Kind::$kind,
            description: $description,
            text: include_str!(concat!("../fixtures/", $name, ".toml")),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("a2", Category, "1 -> 2"),
    fixture!("a3", Category, "1 -> 2 -> 3"),
    fixture!("dual_numbers", Category, "one loop x, x*x = 0"),
    fixture!("loop", Category, "1 -> 2 with a loop at 2, square-zero relations"),
    fixture!("loop_op", Category, "opposite of loop"),
    fixture!("square", Category, "commutative square"),
    fixture!("square_tensor", Category, "a2 tensor a2"),
    fixture!("chain2", Category, "complexes c2 -> c1 -> c0"),
    fixture!("chain3", Category, "complexes c3 -> c2 -> c1 -> c0"),
    fixture!("cyclic3", Category, "3-periodic complexes"),
    fixture!("a2_zero_map", Representation, "k -0-> k over a2"),
    fixture!("a2_mono", Representation, "k -> k^2 over a2"),
    fixture!("square_identity", Representation, "k everywhere, identities, over square"),
    fixture!("loop_m_p1", Representation, "module M: category loop, base loop_op"),
    fixture!("loop_m_p2", Representation, "module M: category loop_op, base loop"),
];

pub fn get(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
