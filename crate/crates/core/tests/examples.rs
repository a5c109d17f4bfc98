//! Every shipped example must run to completion.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(constants);
example!(adiabatic_potential);
example!(efimov_tower);
example!(thomas_collapse);
example!(node_structure);
example!(branches);
example!(meanfield_eos);
