#ifndef ABELFEM_ABELFEM_HPP
#define ABELFEM_ABELFEM_HPP

#include "abelfem/admissibility.hpp"
#include "abelfem/assembly.hpp"
#include "abelfem/config.hpp"
#include "abelfem/csv.hpp"
#include "abelfem/fe_space.hpp"
#include "abelfem/linalg.hpp"
#include "abelfem/mesh.hpp"
#include "abelfem/norms.hpp"
#include "abelfem/parallel.hpp"
#include "abelfem/problem.hpp"
#include "abelfem/quad_policy.hpp"
#include "abelfem/quadrature.hpp"
#include "abelfem/solve.hpp"
#include "abelfem/study.hpp"
#include "abelfem/svg.hpp"

#endif
