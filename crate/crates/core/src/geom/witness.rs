//! Failure certificates for comparison maps.

use serde::Serialize;

use super::bc::{bc_compare, BCSquare};
use super::frobenius::{frobenius, FrobeniusInstance};
use super::GeomMorphism;
use crate::presheaf::{NonBijective, Presheaf, PresheafMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    FrobeniusFailure,
    BcFailure,
}

/// One named input of a failing instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessInput {
    pub role: String,
    pub label: String,
    /// Carrier sizes in object order of the presheaf's site.
    pub carrier: Vec<usize>,
}

#[derive(Debug, Clone)]
enum Instance {
    Frobenius { morphism: GeomMorphism, instance: FrobeniusInstance },
    Bc { square: Box<BCSquare>, input: Presheaf },
}

/// A comparison map that is not bijective at `evaluation_object`.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub morphism: String,
    pub inputs: Vec<WitnessInput>,
    pub evaluation_object: String,
    pub source_size: usize,
    pub target_size: usize,
    pub injective: bool,
    pub surjective: bool,
    #[serde(skip)]
    instance: Instance,
}

/// `1` for a terminal presheaf, `0` for an empty one, otherwise `fallback`.
pub(crate) fn presheaf_label(p: &Presheaf, fallback: impl Into<String>) -> String {
    if p.is_terminal() {
        "1".into()
    } else if p.total_size() == 0 {
        "0".into()
    } else {
        fallback.into()
    }
}

fn input(role: &str, label: String, p: &Presheaf) -> WitnessInput {
    WitnessInput { role: role.into(), label, carrier: p.sizes().to_vec() }
}

impl Witness {
    /// Wraps a Frobenius instance whose `θ` fails to be bijective.
    pub(crate) fn frobenius(
        morphism: &GeomMorphism,
        instance: FrobeniusInstance,
        labels: [String; 3],
        failure: NonBijective,
    ) -> Self {
        let [x, a, b] = labels;
        let d = morphism.target_site();
        Witness {
            kind: WitnessKind::FrobeniusFailure,
            morphism: morphism.functor().describe(),
            inputs: vec![
                input("X", presheaf_label(instance.x(), x), instance.x()),
                input("A", presheaf_label(instance.a(), a), instance.a()),
                input("B", presheaf_label(instance.b(), b), instance.b()),
            ],
            evaluation_object: d.object_name(failure.object).to_string(),
            source_size: failure.source_size,
            target_size: failure.target_size,
            injective: failure.injective,
            surjective: failure.surjective,
            instance: Instance::Frobenius { morphism: morphism.clone(), instance },
        }
    }

    pub(crate) fn bc(square: &BCSquare, input_presheaf: &Presheaf, label: String, failure: NonBijective) -> Self {
        Witness {
            kind: WitnessKind::BcFailure,
            morphism: square.describe(),
            inputs: vec![input("Y", presheaf_label(input_presheaf, label), input_presheaf)],
            evaluation_object: square.f.source().object_name(failure.object).to_string(),
            source_size: failure.source_size,
            target_size: failure.target_size,
            injective: failure.injective,
            surjective: failure.surjective,
            instance: Instance::Bc { square: Box::new(square.clone()), input: input_presheaf.clone() },
        }
    }

    /// Recomputes the comparison map from the stored inputs and checks that it
    /// is not bijective at the recorded object with the recorded sizes.
    pub fn verify(&self) -> bool {
        let map: PresheafMap = match &self.instance {
            Instance::Frobenius { morphism, instance } => match frobenius(morphism, &instance.xi, &instance.m) {
                Ok(fresh) => fresh.theta,
                Err(_) => return false,
            },
            Instance::Bc { square, input } => bc_compare(square, input),
        };
        if map.validate().iter().next().is_some() {
            return false;
        }
        match map.first_non_bijective() {
            Some(nb) => {
                let site = map.source().site();
                site.object_name(nb.object) == self.evaluation_object
                    && nb.source_size == self.source_size
                    && nb.target_size == self.target_size
            }
            None => false,
        }
    }

    /// The Frobenius instance, if this is a Frobenius failure.
    pub fn frobenius_instance(&self) -> Option<&FrobeniusInstance> {
        match &self.instance {
            Instance::Frobenius { instance, .. } => Some(instance),
            Instance::Bc { .. } => None,
        }
    }

    pub fn input(&self, role: &str) -> Option<&WitnessInput> {
        self.inputs.iter().find(|i| i.role == role)
    }
}
