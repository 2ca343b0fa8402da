#ifndef DPL_SEMANTICS_HPP_
#define DPL_SEMANTICS_HPP_

#include "dpl/semantics/countermodel.hpp"
#include "dpl/semantics/io.hpp"
#include "dpl/semantics/oracle.hpp"
#include "dpl/semantics/shrink.hpp"
#include "dpl/semantics/structure.hpp"

#endif  // DPL_SEMANTICS_HPP_
