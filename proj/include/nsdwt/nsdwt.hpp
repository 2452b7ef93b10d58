#ifndef NSDWT_NSDWT_HPP
#define NSDWT_NSDWT_HPP

#include "nsdwt/bench.hpp"
#include "nsdwt/boundary.hpp"
#include "nsdwt/coefficient.hpp"
#include "nsdwt/engine.hpp"
#include "nsdwt/image.hpp"
#include "nsdwt/io.hpp"
#include "nsdwt/laurent.hpp"
#include "nsdwt/lifting_plan.hpp"
#include "nsdwt/op_count.hpp"
#include "nsdwt/scheme.hpp"
#include "nsdwt/stencil.hpp"
#include "nsdwt/step_matrix.hpp"
#include "nsdwt/verify.hpp"

#endif  // NSDWT_NSDWT_HPP
