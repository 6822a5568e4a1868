// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_MELLIN_HPP_
#define MELLIN_MELLIN_HPP_

#include "continuation.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "gamma.hpp"
#include "gl4.hpp"
#include "params.hpp"
#include "pdelta.hpp"
#include "placeholders.hpp"
#include "quadrature.hpp"
#include "recurrence.hpp"
#include "residues.hpp"
#include "scalar.hpp"

#endif // MELLIN_MELLIN_HPP_
