// Tour of the character layer: exact scalars, character validation,
// canonical ray representatives, pullbacks, and fixed-character subspaces.
use num_rational::BigRational;
use sigmacert_core::characters::{
    canonical_class_rep, character_from_coords, character_from_values, fix_subspace, pullback,
    AlgebraicGenerator, CoefficientField, Scalar,
};
use sigmacert_core::groups::{
    FiniteExtensionData, FiniteGroupData, GroupDescriptor, Homomorphism, Word,
};

fn main() {
    // 1. Field ℚ(√2) with one transcendental symbol π.
    let f = CoefficientField::new(
        Some(AlgebraicGenerator::square_root_of(2).unwrap()),
        vec!["pi".into()],
    )
    .unwrap();
    let pi = Scalar::symbol(&f, 0).unwrap();
    let sqrt2 = Scalar::theta(&f).unwrap();
    let two = sqrt2.mul(&sqrt2, &f);
    println!("sqrt2 * sqrt2         = {}", two.render(&f));
    let ratio = two
        .mul(&pi, &f)
        .div_exact(&pi, &f)
        .unwrap()
        .expect("pi divides 2*pi");
    println!("(2*pi) / pi           = {}", ratio.render(&f));

    // 2. Characters of the Klein-bottle group ⟨a,b | b a b⁻¹ a⟩: a is torsion.
    let klein = GroupDescriptor::finite_presentation(
        vec!["a".into(), "b".into()],
        vec![Word::from_i64_pairs(&[(1, 1), (0, 1), (1, -1), (0, 1)])],
    )
    .unwrap();
    let chi = character_from_values(&f, &klein, vec![Scalar::zero(), sqrt2.clone()]).unwrap();
    println!("klein chi coords len  = {}", chi.coords().len());
    let bad = character_from_values(&f, &klein, vec![Scalar::one(&f), Scalar::one(&f)]);
    println!("klein bad character   = {}", bad.unwrap_err());

    // 3. Canonical class representatives: (π, 2π) lands in the rational class (1, 2).
    let z2 = GroupDescriptor::free_abelian(2);
    let two_pi = pi.scale_rational(&BigRational::from_integer(2.into()), &f);
    let chi_pi = character_from_coords(&f, &z2, vec![pi.clone(), two_pi]).unwrap();
    let class = canonical_class_rep(&chi_pi).unwrap();
    println!(
        "class of (pi, 2pi)    = rational={} coords=[{}]",
        class.is_rational(),
        class
            .representative()
            .coords()
            .iter()
            .map(|c| c.render(&f))
            .collect::<Vec<_>>()
            .join(", ")
    );

    // 4. Pullback along the automorphism (x, y) ↦ (x + y, y) of ℤ².
    let phi = Homomorphism::new(
        z2.clone(),
        z2.clone(),
        vec![
            Word::from_i64_pairs(&[(0, 1), (1, 1)]),
            Word::from_i64_pairs(&[(1, 1)]),
        ],
    )
    .unwrap();
    let pulled = pullback(&chi_pi, &phi).unwrap();
    println!(
        "pullback coords       = [{}]",
        pulled
            .coords()
            .iter()
            .map(|c| c.render(&f))
            .collect::<Vec<_>>()
            .join(", ")
    );

    // 5. Fix subspace of the Klein-bottle group as a ℤ²-by-(ℤ/2) extension.
    let ext = {
        let kernel = GroupDescriptor::free_abelian(2);
        let quotient = FiniteGroupData::cyclic_named(2, "x").unwrap();
        let data = FiniteExtensionData::new(
            kernel,
            quotient,
            vec![Word::identity(), Word::generator(2)],
            vec![
                vec![Word::generator(0), Word::generator(1)],
                vec![Word::letter(0, -1), Word::generator(1)],
            ],
            vec![
                vec![Word::identity(), Word::identity()],
                vec![Word::identity(), Word::generator(1)],
            ],
        )
        .unwrap();
        GroupDescriptor::extension(data)
    };
    let fix = fix_subspace(&ext).unwrap();
    println!(
        "fix subspace          = dim {} of ambient {}, basis {:?}",
        fix.dim(),
        fix.ambient(),
        fix.basis()
    );
    let json = serde_json::to_string(&fix).unwrap();
    println!("fix as JSON           = {json}");

    // 6. Wire format of a character.
    let wire = serde_json::to_string(&chi_pi.data()).unwrap();
    println!("character wire format = {wire}");
}
