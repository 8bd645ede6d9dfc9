/* Copyright 2026 The laceprep Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <vector>

#include "laceprep/lattice.hpp"

namespace laceprep {

// Pauli-product observable: X-type legs (X or Y) plus Z legs.
// basis 'N' lets the evaluation engine pick the natural basis per leg
// (the one the protocol reduction makes nonzero).
struct StabilizerSpec {
    std::vector<SiteId> x_support;
    std::vector<SiteId> z_support;
    char basis = 'N';
    std::string name;
};

// Cluster term of one site: leg there, Z on its protocol neighbors.
StabilizerSpec cluster_term(const Lattice& lat, SiteId site);

// Pre-measurement representatives of the retained X-type checks (plaquette
// operators), built as products of cluster terms whose Z residues cancel.
// Empty for kinds without local X checks (chain, checkerboard/Xu-Moore).
std::vector<StabilizerSpec> x_check_specs(const Lattice& lat);

// Post-measurement Z-type checks on the retained sites: one per measured
// site, support = its protocol neighborhood.
std::vector<StabilizerSpec> z_check_specs(const Lattice& lat);

} // namespace laceprep
