//! Fixed corpus of formula/instance pairs drawn from the verification suites.

use homtwist::axioms::{
    antipode_identities, bialgebra_identities, coalgebra_identities, hom_algebra_identities,
    module_context, module_identities,
};
use homtwist::library::library;
use homtwist::quasitriangular::rmatrix_identities;
use homtwist::rep::{
    braided_identities, monoidal_identities, standard_modules, RepConfig, Scope, Setup,
};
use homtwist::twist::{consequence_identities, definition_identities};
use homtwist::{Context, Flavor, HomModule, Identity};

pub struct Group {
    pub label: String,
    pub ctx: Context,
    pub identities: Vec<Identity>,
}

pub fn corpus() -> Vec<Group> {
    let mut out = Vec::new();
    for inst in library() {
        let h = &inst.monoidal;
        let (ctx, s) = h.context();
        let mut ids = hom_algebra_identities(s);
        ids.extend(coalgebra_identities(s, -1));
        ids.extend(bialgebra_identities(s));
        ids.extend(antipode_identities(s));
        for tw in &inst.twists {
            ids.extend(definition_identities(s, tw.sigma()));
            ids.extend(consequence_identities(s, tw.sigma(), tw.rho()));
        }
        for rm in &inst.rmatrices {
            ids.extend(rmatrix_identities(s, rm.r(), Flavor::Monoidal));
        }
        out.push(Group {
            label: format!("{} monoidal", inst.name),
            ctx,
            identities: ids,
        });

        let p = &inst.plain;
        let (ctx, s) = p.context();
        let mut ids = coalgebra_identities(s, 1);
        ids.extend(bialgebra_identities(s));
        for rm in &inst.plain_rmatrices {
            ids.extend(rmatrix_identities(s, rm.r(), Flavor::Plain));
        }
        out.push(Group {
            label: format!("{} plain", inst.name),
            ctx,
            identities: ids,
        });

        let m = HomModule::regular(h).expect("regular module");
        let (ctx, hs, ms) = module_context(h, &m).expect("module context");
        out.push(Group {
            label: format!("{} regular module", inst.name),
            ctx,
            identities: module_identities(hs, ms),
        });
    }
    let inst = &library()[2];
    let h = &inst.monoidal;
    let rm = &inst.rmatrices[0];
    let mods = standard_modules(h, 3).expect("modules");
    let setup = Setup::new(&[h], &mods[..2]).expect("setup");
    let cat = setup
        .category(0, RepConfig::new(1, -1, Flavor::Monoidal))
        .with_rmatrix(rm.r(), rm.inverse());
    let mut ids = monoidal_identities(
        &setup,
        &cat,
        Scope {
            all_quadruples: false,
        },
    );
    ids.extend(braided_identities(&setup, &cat));
    ids.retain(|i| !i.id.contains("natural"));
    ids.truncate(40);
    out.push(Group {
        label: format!("{} Rep(1,-1)", inst.name),
        ctx: setup.ctx,
        identities: ids,
    });
    out
}
