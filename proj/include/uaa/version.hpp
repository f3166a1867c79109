#ifndef UAA_VERSION_HPP
#define UAA_VERSION_HPP

#define UAA_VERSION "0.1.0"

#endif
