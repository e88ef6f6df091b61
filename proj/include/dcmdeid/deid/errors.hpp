#pragma once

#include <stdexcept>

namespace dcmdeid::deid {

class deid_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A rule assigns an action the element's VR cannot take.
class policy_conflict : public deid_error {
public:
    using deid_error::deid_error;
};

/// Policy file could not be parsed.
class policy_syntax_error : public deid_error {
public:
    using deid_error::deid_error;
};

/// A new mapping would make two originals share a replacement.
class vault_collision : public deid_error {
public:
    using deid_error::deid_error;
};

class invalid_uid : public deid_error {
public:
    using deid_error::deid_error;
};

class unparseable_date : public deid_error {
public:
    using deid_error::deid_error;
};

class region_out_of_bounds : public deid_error {
public:
    using deid_error::deid_error;
};

}  // namespace dcmdeid::deid
