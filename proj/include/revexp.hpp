#pragma once

// Everything: terms, transition systems, bisimilarities, the ready-set
// encoding, the axiomatic deciders and the text front end.

#include "revexp/bisimilarity.hpp"
#include "revexp/brs_encoding.hpp"
#include "revexp/brs_process.hpp"
#include "revexp/core_terms.hpp"
#include "revexp/enumerate.hpp"
#include "revexp/equational.hpp"
#include "revexp/lts_export.hpp"
#include "revexp/oracle.hpp"
#include "revexp/proved_lts.hpp"
#include "revexp/syntax.hpp"
