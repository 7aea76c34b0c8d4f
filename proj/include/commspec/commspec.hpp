#ifndef COMMSPEC_COMMSPEC_HPP
#define COMMSPEC_COMMSPEC_HPP

#include "commspec/errors.hpp"
#include "commspec/matrix.hpp"
#include "commspec/eigensolver.hpp"
#include "commspec/lifted_operator.hpp"
#include "commspec/random.hpp"
#include "commspec/spectra_bounds.hpp"
#include "commspec/closed_forms.hpp"
#include "commspec/conjecture_lab.hpp"
#include "commspec/parallel.hpp"
#include "commspec/extremal_search.hpp"
#include "commspec/serialization.hpp"
#include "commspec/io.hpp"

#endif  // COMMSPEC_COMMSPEC_HPP
