#pragma once

// Generated by tools/make_ad_table from data/ad_critical_values.txt. Do not edit.

namespace potkit::detail {

inline constexpr const char* kAdTableText = R"potkit(# Anderson-Darling null distribution, GPD with scale and shape estimated by ML.
# Generated by make_ad_table: n=400 replicates=20000 seed=20010101
# Columns: upper-tail probability levels; rows: shape, then critical values of A^2.
potkit-ad-table 1
levels 0.999 0.995 0.99 0.975 0.95 0.9 0.85 0.8 0.75 0.7 0.65 0.6 0.55 0.5 0.45 0.4 0.35 0.3 0.25 0.2 0.15 0.1 0.05 0.025 0.01 0.005 0.001
shape -0.5 0.113624 0.140507 0.154083 0.177566 0.203108 0.238475 0.267602 0.295688 0.320914 0.346005 0.371558 0.398187 0.425914 0.455907 0.492527 0.52999 0.570573 0.616943 0.677367 0.746272 0.837769 0.966442 1.18927 1.42739 1.76684 2.07258 2.69924
shape -0.4 0.109329 0.135824 0.149808 0.173939 0.19893 0.232863 0.26242 0.288164 0.312956 0.337521 0.362449 0.388162 0.415987 0.445755 0.476275 0.509318 0.55013 0.59568 0.64673 0.706958 0.800899 0.919338 1.14409 1.38404 1.66919 1.93154 2.44479
shape -0.3 0.118608 0.135371 0.148802 0.169738 0.193969 0.228217 0.255227 0.278836 0.303349 0.326202 0.349013 0.374293 0.400704 0.429047 0.460584 0.493139 0.529088 0.572331 0.623989 0.686139 0.769537 0.880952 1.08646 1.30124 1.57619 1.7862 2.34856
shape -0.2 0.108675 0.129565 0.143261 0.165939 0.188481 0.22378 0.250286 0.274188 0.296316 0.319512 0.342182 0.366823 0.392339 0.419949 0.44954 0.481948 0.518946 0.560842 0.60844 0.667244 0.745932 0.856279 1.04856 1.25914 1.55901 1.78221 2.32235
shape -0.1 0.104805 0.127152 0.139775 0.162496 0.185309 0.218687 0.243921 0.266861 0.289983 0.311381 0.332965 0.356179 0.378992 0.405814 0.434627 0.465127 0.501105 0.539572 0.585088 0.64168 0.715199 0.822805 1.01363 1.20253 1.436 1.66403 2.17805
shape 0 0.102759 0.126188 0.138995 0.160335 0.184197 0.214787 0.239395 0.26234 0.284091 0.305287 0.326184 0.348856 0.371713 0.395022 0.419831 0.449725 0.482281 0.520407 0.565145 0.618638 0.689908 0.79607 0.973924 1.15696 1.40876 1.61668 2.01663
shape 0.1 0.105827 0.125004 0.135881 0.158303 0.180144 0.209986 0.234124 0.254881 0.275052 0.295988 0.31862 0.33991 0.362183 0.385233 0.409964 0.438442 0.471092 0.507191 0.550698 0.602395 0.671911 0.769257 0.93757 1.1295 1.37875 1.55581 1.97077
shape 0.2 0.103882 0.122123 0.135005 0.155169 0.176411 0.205046 0.228277 0.249692 0.270885 0.290117 0.309743 0.330926 0.352227 0.375102 0.400151 0.426822 0.457804 0.491049 0.531469 0.581873 0.648298 0.742246 0.906743 1.06901 1.30259 1.46536 1.88762
shape 0.3 0.10358 0.122416 0.134351 0.155932 0.176986 0.204114 0.226847 0.246778 0.266501 0.285801 0.30451 0.323379 0.343473 0.365662 0.389292 0.415832 0.44543 0.480372 0.51863 0.56773 0.631813 0.718539 0.876008 1.04624 1.26959 1.42632 1.84708
shape 0.4 0.101196 0.119938 0.130116 0.151474 0.171278 0.199726 0.222149 0.241676 0.26081 0.279705 0.299967 0.319289 0.339796 0.362633 0.385075 0.409972 0.438833 0.471244 0.508669 0.554475 0.613997 0.698156 0.85065 1.01494 1.23285 1.36759 1.75355
shape 0.5 0.0999008 0.118362 0.131686 0.151613 0.170021 0.198199 0.219735 0.239717 0.258709 0.277667 0.295928 0.315078 0.334486 0.355071 0.378627 0.404962 0.431975 0.46416 0.503163 0.548028 0.60761 0.693352 0.841115 0.976579 1.15886 1.31954 1.74106
shape 0.6 0.0996222 0.120329 0.131743 0.152006 0.170191 0.19668 0.218907 0.237942 0.255032 0.274096 0.292948 0.312431 0.33211 0.352686 0.374808 0.398162 0.426001 0.456584 0.492678 0.537545 0.594445 0.676587 0.819126 0.950765 1.15811 1.31689 1.7068
shape 0.7 0.1005 0.117613 0.128462 0.147936 0.169508 0.195474 0.218176 0.236527 0.254262 0.272896 0.290906 0.309372 0.328768 0.34954 0.370536 0.394222 0.421042 0.449906 0.484736 0.525411 0.577816 0.658674 0.794757 0.93282 1.10757 1.26585 1.5453
shape 0.8 0.0939475 0.117733 0.129635 0.149539 0.16887 0.194663 0.216154 0.234262 0.252277 0.270719 0.288145 0.306428 0.325167 0.344501 0.365889 0.389557 0.415014 0.445144 0.479157 0.520163 0.571827 0.64894 0.783001 0.927041 1.11049 1.26723 1.58012
shape 0.9 0.0994315 0.117341 0.127556 0.146529 0.165831 0.192822 0.213156 0.232435 0.250038 0.26748 0.285163 0.303394 0.321023 0.340601 0.362002 0.385623 0.410109 0.44077 0.473557 0.515742 0.566577 0.638574 0.780381 0.922282 1.07858 1.22182 1.54081
shape 1 0.101343 0.116795 0.127951 0.146636 0.164974 0.190976 0.211159 0.229911 0.248134 0.264332 0.281377 0.298106 0.316841 0.337131 0.356329 0.379737 0.404561 0.433823 0.466095 0.508266 0.558742 0.632525 0.753044 0.881808 1.06172 1.1898 1.55373
shape 1.1 0.0975947 0.114944 0.125906 0.146413 0.164318 0.188366 0.209606 0.228644 0.245485 0.262671 0.278876 0.296565 0.314935 0.334608 0.356513 0.378468 0.402348 0.431165 0.464859 0.506252 0.55658 0.629626 0.758821 0.886808 1.06879 1.19324 1.50064
shape 1.2 0.0964911 0.11581 0.128463 0.146466 0.165155 0.189406 0.209161 0.227993 0.24512 0.260929 0.277932 0.295316 0.313516 0.331703 0.3513 0.373469 0.398545 0.426766 0.4588 0.497373 0.548756 0.619618 0.739445 0.868568 1.03868 1.19244 1.4944
shape 1.3 0.0968742 0.116255 0.126227 0.144368 0.164623 0.189801 0.208845 0.227058 0.243731 0.260886 0.277536 0.293987 0.312187 0.330737 0.349674 0.371336 0.39608 0.423052 0.453526 0.494587 0.547213 0.618258 0.741794 0.873591 1.04398 1.17235 1.4337
shape 1.4 0.096751 0.11533 0.126852 0.145855 0.164861 0.190449 0.210227 0.227982 0.243896 0.260041 0.276342 0.294641 0.312156 0.330089 0.350012 0.37259 0.397725 0.424866 0.4566 0.49534 0.544988 0.61559 0.733927 0.849601 1.00239 1.10409 1.36105
shape 1.5 0.096634 0.114791 0.125624 0.143309 0.161446 0.187452 0.207 0.225098 0.242253 0.259087 0.275938 0.29231 0.309511 0.327922 0.348571 0.369848 0.393131 0.418478 0.452065 0.49002 0.53946 0.610046 0.737219 0.855406 1.01375 1.13401 1.43144
shape 1.6 0.0994443 0.114423 0.12495 0.142188 0.161202 0.188184 0.208212 0.22621 0.24295 0.258963 0.275485 0.292195 0.309456 0.327271 0.346322 0.368601 0.392009 0.419171 0.450507 0.489536 0.539163 0.60826 0.728646 0.853329 1.01979 1.15083 1.46933
shape 1.7 0.0976248 0.116684 0.126676 0.145425 0.162946 0.188956 0.208985 0.226196 0.243375 0.25896 0.274957 0.290365 0.307129 0.326182 0.346712 0.367997 0.39156 0.419508 0.451868 0.489636 0.537602 0.606629 0.720784 0.84203 0.98777 1.1263 1.39869
shape 1.8 0.0917621 0.115422 0.125648 0.143427 0.162542 0.187022 0.206743 0.224898 0.241682 0.258321 0.27515 0.291748 0.309669 0.327418 0.346966 0.368328 0.390135 0.415474 0.446967 0.484687 0.531049 0.601365 0.716098 0.830845 0.994509 1.1232 1.40078
shape 1.9 0.0946889 0.113868 0.124746 0.142668 0.161346 0.186549 0.207003 0.224541 0.241032 0.257062 0.274368 0.290488 0.307692 0.327162 0.346934 0.367261 0.390851 0.416668 0.445898 0.4829 0.529575 0.596275 0.716636 0.839618 1.01159 1.14172 1.44845
shape 2 0.0950891 0.11497 0.125392 0.143026 0.162055 0.186491 0.206321 0.223687 0.240575 0.256845 0.27263 0.289123 0.306799 0.325318 0.343584 0.364458 0.387354 0.41466 0.446069 0.483386 0.527855 0.595413 0.709825 0.826579 0.976715 1.1113 1.42885
shape 2.1 0.0996675 0.115861 0.125596 0.143914 0.162026 0.187795 0.206754 0.223761 0.24114 0.257088 0.272553 0.288765 0.305902 0.324237 0.344724 0.365304 0.389133 0.414448 0.446041 0.484006 0.533485 0.601152 0.718652 0.833192 0.98877 1.12005 1.40961
shape 2.2 0.0952345 0.113339 0.124565 0.144171 0.16292 0.188285 0.208154 0.225224 0.241663 0.257256 0.273506 0.289513 0.306461 0.324392 0.344203 0.365203 0.388415 0.413513 0.444992 0.481695 0.529732 0.593211 0.710784 0.8205 0.988646 1.12502 1.39579
shape 2.3 0.0959585 0.114606 0.125597 0.14276 0.16208 0.187452 0.208381 0.225676 0.241991 0.257543 0.27369 0.290892 0.307498 0.325938 0.3449 0.367147 0.38972 0.415495 0.446362 0.482786 0.530434 0.599905 0.712645 0.825558 0.96689 1.07652 1.328
shape 2.4 0.0989477 0.115608 0.12638 0.143847 0.161739 0.186832 0.20616 0.223475 0.239662 0.255442 0.272382 0.288506 0.305473 0.323772 0.343661 0.364636 0.387701 0.414218 0.445361 0.482261 0.529344 0.595028 0.710541 0.824497 0.971014 1.10927 1.45373
shape 2.5 0.0974047 0.112832 0.122144 0.142312 0.161258 0.185456 0.205892 0.223434 0.239248 0.255353 0.271523 0.287838 0.303948 0.32259 0.342537 0.36412 0.387411 0.414305 0.44572 0.484556 0.531383 0.600059 0.717767 0.840494 1.00913 1.13812 1.42469
shape 2.6 0.099827 0.115627 0.126697 0.144685 0.161879 0.186659 0.206263 0.223292 0.240034 0.25592 0.273037 0.289872 0.306883 0.324933 0.343684 0.364163 0.38786 0.413248 0.441845 0.478324 0.523589 0.591151 0.700743 0.814677 0.975644 1.08218 1.34544
shape 2.7 0.094731 0.114795 0.125661 0.144029 0.162739 0.187407 0.206694 0.22479 0.241024 0.257036 0.271779 0.288209 0.305804 0.323389 0.342547 0.363671 0.385989 0.411295 0.44227 0.478535 0.525201 0.593041 0.709694 0.832942 0.979007 1.09783 1.45054
shape 2.8 0.0939679 0.115564 0.126706 0.144564 0.162351 0.185972 0.206417 0.224317 0.240166 0.256666 0.273101 0.289958 0.306884 0.324745 0.343181 0.363461 0.386699 0.413517 0.44375 0.48173 0.530201 0.597354 0.711884 0.825027 0.998702 1.11949 1.45346
shape 2.9 0.0975793 0.112975 0.123672 0.143163 0.162265 0.187396 0.207273 0.224691 0.241608 0.258445 0.273765 0.289429 0.306024 0.323139 0.342899 0.363599 0.386501 0.411827 0.442924 0.481561 0.530989 0.598099 0.714027 0.831704 0.986169 1.11352 1.4246
shape 3 0.100677 0.117155 0.126672 0.144672 0.163616 0.188252 0.206932 0.223065 0.239869 0.255537 0.271903 0.288267 0.306053 0.323874 0.34335 0.36409 0.388359 0.415234 0.446693 0.483491 0.530733 0.602013 0.721752 0.841254 0.995545 1.11556 1.3702
)potkit";

}  // namespace potkit::detail
