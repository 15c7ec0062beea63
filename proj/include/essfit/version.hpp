#ifndef ESSFIT_VERSION_HPP
#define ESSFIT_VERSION_HPP

#define ESSFIT_VERSION "0.1.0"

#endif
