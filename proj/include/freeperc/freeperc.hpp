#pragma once

#include "bounds.hpp"
#include "cayley_graph.hpp"
#include "cluster_distribution.hpp"
#include "errors.hpp"
#include "factor_chi.hpp"
#include "free_product.hpp"
#include "group_factor.hpp"
#include "polynomial.hpp"
#include "product_spec.hpp"
#include "rational.hpp"
#include "rational_function.hpp"
#include "reports.hpp"
#include "root_isolation.hpp"
#include "simulate.hpp"
#include "walk_through.hpp"
