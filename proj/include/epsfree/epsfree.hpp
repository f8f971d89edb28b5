#pragma once

#include "epsfree/certify.hpp"
#include "epsfree/clique.hpp"
#include "epsfree/errors.hpp"
#include "epsfree/families.hpp"
#include "epsfree/fock_space.hpp"
#include "epsfree/graph.hpp"
#include "epsfree/io.hpp"
#include "epsfree/lanczos.hpp"
#include "epsfree/moments.hpp"
#include "epsfree/norm_bounds.hpp"
#include "epsfree/operator_coefficients.hpp"
#include "epsfree/parallel.hpp"
#include "epsfree/spectral_estimator.hpp"
#include "epsfree/spectrum.hpp"
#include "epsfree/trace_monoid.hpp"
