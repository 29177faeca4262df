// Tour of the sphere-geometry layer: certified strict linear programs, cone
// membership, spherical polytopes, and sphere-subset algebra (joins, isolated
// points, linear maps, subsphere restriction).
use num_bigint::BigInt;
use num_rational::BigRational;
use sigmacert_core::characters::{AlgebraicGenerator, CoefficientField, Scalar};
use sigmacert_core::sphere_geometry::{
    apply_linear_map, cone_membership, isolated_classes, isolated_points, restrict_to_subspace,
    scalar_hemisphere_witness, spherical_join_complement, strict_positive_functional,
    ConeMembership, ScalarHemisphereOutcome, SigmaSet, SphericalPolytope, StrictLp,
};
use sigmacert_core::{GroupDescriptor, QMatrix, Subspace};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rv(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| q(x)).collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn show_int(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn main() {
    // 1. A strict linear program with a certified answer either way.
    let feasible = strict_positive_functional(&[rv(&[2, -1]), rv(&[-1, 2])]).unwrap();
    match &feasible {
        StrictLp::Feasible { functional } => {
            let a = dot(functional, &rv(&[2, -1]));
            let b = dot(functional, &rv(&[-1, 2]));
            println!("lp feasible           = f.(2,-1)={a} f.(-1,2)={b} (both positive)");
        }
        StrictLp::Infeasible { .. } => println!("lp feasible           = UNEXPECTED infeasible"),
    }
    let infeasible = strict_positive_functional(&[rv(&[1, 0]), rv(&[-1, 0])]).unwrap();
    match &infeasible {
        StrictLp::Infeasible { combination } => {
            let total: BigRational = combination.iter().sum();
            let mixed: Vec<BigRational> = (0..2)
                .map(|j| {
                    &combination[0] * &rv(&[1, 0])[j] + &combination[1] * &rv(&[-1, 0])[j]
                })
                .collect();
            println!(
                "lp infeasible         = weights=[{}, {}] sum={} mix=({}, {})",
                combination[0], combination[1], total, mixed[0], mixed[1]
            );
        }
        StrictLp::Feasible { .. } => println!("lp infeasible         = UNEXPECTED feasible"),
    }

    // 2. Cone membership with certificates.
    let gens = [rv(&[1, 0]), rv(&[0, 1])];
    match cone_membership(&rv(&[1, 2]), &gens).unwrap() {
        ConeMembership::Inside { coefficients } => println!(
            "cone (1,2) in e1,e2   = inside, coefficients=[{}, {}]",
            coefficients[0], coefficients[1]
        ),
        ConeMembership::Outside { .. } => println!("cone (1,2) in e1,e2   = UNEXPECTED outside"),
    }
    match cone_membership(&rv(&[-1, 1]), &gens).unwrap() {
        ConeMembership::Outside { separator } => {
            let t = dot(&separator, &rv(&[-1, 1]));
            let g1 = dot(&separator, &gens[0]);
            let g2 = dot(&separator, &gens[1]);
            println!(
                "cone (-1,1) in e1,e2  = outside, sep.target={t} sep.gens=[{g1}, {g2}]"
            );
        }
        ConeMembership::Inside { .. } => println!("cone (-1,1) in e1,e2  = UNEXPECTED inside"),
    }

    // 3. Spherical polytopes canonicalize vertices and answer ray queries.
    let arc = SphericalPolytope::new(2, vec![rv(&[1, 0]), vec![q(1) / q(2), q(1) / q(3)]]).unwrap();
    let verts: Vec<String> = arc.vertices().iter().map(|v| show_int(v)).collect();
    println!("arc vertices          = {}", verts.join(" "));
    println!(
        "arc contains          = (2,1):{} (-1,1):{}",
        arc.contains_ray(&rv(&[2, 1])).unwrap(),
        arc.contains_ray(&rv(&[-1, 1])).unwrap()
    );

    // 4. Hemisphere reduction for scalar coordinates over ℚ(√2).
    let f = CoefficientField::new(
        Some(AlgebraicGenerator::square_root_of(2).unwrap()),
        Vec::new(),
    )
    .unwrap();
    let sqrt2 = Scalar::theta(&f).unwrap();
    let one = Scalar::one(&f);
    let fits = scalar_hemisphere_witness(&f, &[vec![sqrt2.clone(), one.clone()]]).unwrap();
    let tag = |o: &ScalarHemisphereOutcome| match o {
        ScalarHemisphereOutcome::Functional(_) => "functional",
        ScalarHemisphereOutcome::Infeasible { .. } => "infeasible",
        ScalarHemisphereOutcome::Indeterminate { .. } => "indeterminate",
    };
    println!("scalar (sqrt2,1)      = {}", tag(&fits));
    let torn = scalar_hemisphere_witness(
        &f,
        &[
            vec![sqrt2.clone(), one.neg(&f)],
            vec![sqrt2.neg(&f), one.clone()],
        ],
    )
    .unwrap();
    println!("scalar antipodal-ish  = {}", tag(&torn));

    // 5. Sphere-subset algebra: the invariant complement of a direct product
    // is the join-complement of the factors.
    let point = SigmaSet::single_point(1, rv(&[1])).unwrap();
    let two_points = spherical_join_complement(&point, &point).unwrap();
    let pts: Vec<String> = isolated_points(&two_points)
        .unwrap()
        .iter()
        .map(|v| show_int(v))
        .collect();
    println!("join point*point      = isolated {}", pts.join(" "));

    let sub = spherical_join_complement(&SigmaSet::whole_sphere(2), &SigmaSet::empty(1)).unwrap();
    match &sub {
        SigmaSet::Subsphere { space } => {
            println!(
                "join S1*empty         = subsphere dim {} of ambient {}",
                space.dim(),
                space.ambient()
            );
        }
        other => println!("join S1*empty         = UNEXPECTED {other:?}"),
    }

    // 6. Linear maps act on classes; coordinate swap permutes the two points.
    let swap = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let swapped = apply_linear_map(&two_points, &swap).unwrap();
    println!("swap fixes the pair   = {}", swapped == two_points);

    // 7. Restriction to a subsphere, in the subspace's own coordinates.
    let xy = SigmaSet::subsphere(Subspace::span(3, &[rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap());
    let yz = Subspace::span(3, &[rv(&[0, 1, 0]), rv(&[0, 0, 1])]).unwrap();
    let line = restrict_to_subspace(&xy, &yz).unwrap();
    match &line {
        SigmaSet::Subsphere { space } => {
            let basis = &space.basis()[0];
            println!(
                "restrict xy to yz     = S0 at ({}, {})",
                basis[0], basis[1]
            );
        }
        other => println!("restrict xy to yz     = UNEXPECTED {other:?}"),
    }

    // 8. Isolated points as canonical character classes of ℤ².
    let z2 = GroupDescriptor::free_abelian(2);
    let classes = isolated_classes(&two_points, &z2).unwrap();
    let reps: Vec<String> = classes
        .iter()
        .map(|c| {
            let coords: Vec<String> = c
                .representative()
                .coords()
                .iter()
                .map(|s| s.render(c.representative().field()))
                .collect();
            format!("[{}]", coords.join(", "))
        })
        .collect();
    println!(
        "classes on Z^2        = rational={} reps={}",
        classes.iter().all(|c| c.is_rational()),
        reps.join(" ")
    );

    // 9. JSON wire form of a mixed union round-trips.
    let w = Subspace::span(3, &[rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap();
    let p = SphericalPolytope::point(3, rv(&[0, 1, 1])).unwrap();
    let mixed = SigmaSet::union(3, vec![w], vec![p]).unwrap();
    let json = serde_json::to_string(&mixed).unwrap();
    println!("union wire            = {json}");
    let back: SigmaSet = serde_json::from_str(&json).unwrap();
    println!("union round trip      = {}", back == mixed);
}
