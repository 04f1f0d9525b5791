// Generated once from a fixed seed; do not edit by hand.

pub(crate) const BASE_SHAPE: [[f64; 2]; 68] = [
    [200.000000, 110.000000],
    [198.616540, 125.997406],
    [194.519326, 141.380041],
    [187.865812, 155.556759],
    [178.911688, 167.982756],
    [168.001057, 178.180508],
    [155.553207, 185.758122],
    [142.046503, 190.424393],
    [128.000000, 192.000000],
    [113.953497, 190.424393],
    [100.446793, 185.758122],
    [87.998943, 178.180508],
    [77.088312, 167.982756],
    [68.134188, 155.556759],
    [61.480674, 141.380041],
    [57.383460, 125.997406],
    [56.000000, 110.000000],
    [70.000000, 84.000000],
    [80.000000, 79.757359],
    [90.000000, 78.000000],
    [100.000000, 79.757359],
    [110.000000, 84.000000],
    [146.000000, 84.000000],
    [156.000000, 79.757359],
    [166.000000, 78.000000],
    [176.000000, 79.757359],
    [186.000000, 84.000000],
    [128.000000, 96.000000],
    [128.000000, 106.000000],
    [128.000000, 116.000000],
    [128.000000, 126.000000],
    [116.000000, 135.000000],
    [122.000000, 138.000000],
    [128.000000, 141.000000],
    [134.000000, 138.000000],
    [140.000000, 135.000000],
    [84.000000, 102.000000],
    [90.000000, 97.669873],
    [102.000000, 97.669873],
    [108.000000, 102.000000],
    [102.000000, 106.330127],
    [90.000000, 106.330127],
    [148.000000, 102.000000],
    [154.000000, 97.669873],
    [166.000000, 97.669873],
    [172.000000, 102.000000],
    [166.000000, 106.330127],
    [154.000000, 106.330127],
    [104.000000, 168.000000],
    [107.215390, 163.000000],
    [116.000000, 159.339746],
    [128.000000, 158.000000],
    [140.000000, 159.339746],
    [148.784610, 163.000000],
    [152.000000, 168.000000],
    [148.784610, 173.000000],
    [140.000000, 176.660254],
    [128.000000, 178.000000],
    [116.000000, 176.660254],
    [107.215390, 173.000000],
    [114.000000, 168.000000],
    [118.100505, 165.171573],
    [128.000000, 164.000000],
    [137.899495, 165.171573],
    [142.000000, 168.000000],
    [137.899495, 170.828427],
    [128.000000, 172.000000],
    [118.100505, 170.828427],
];

/// Row `2p` is the x displacement of point `p`, row `2p + 1` its y
/// displacement; columns follow `[exp6, rot, trans]`.
pub(crate) const PARAM_MAP: [[f64; 12]; 136] = [
    [0.257617, 0.075356, -0.028250, 0.238134, 0.449518, 0.049514, -0.862428, 34.462781, 25.478285, 40.723098, -0.819864, 35.569222],
    [0.041332, 0.279098, 0.252509, -0.729577, -0.004276, -0.068094, 33.490811, 0.356863, 72.075796, -0.425582, 39.653200, -13.652982],
    [-0.046960, 0.047950, 0.161248, -0.444692, 0.360963, -0.000424, 0.191509, 36.865555, 10.228821, 40.541562, 0.156983, 35.210324],
    [0.029046, 0.587847, -0.311254, 0.343991, 0.054823, 0.109273, 36.665366, -0.120866, 70.515053, 1.178278, 40.299419, -4.910260],
    [0.515802, 0.355576, 0.184450, -0.157395, -0.167677, -0.148246, -0.354152, 39.306915, -6.444680, 40.336713, -0.130724, 32.569662],
    [-0.323318, 0.033779, 0.119625, -0.237449, -0.040088, -0.544528, 38.010789, 0.071988, 66.870282, 0.334990, 39.602440, 1.753230],
    [0.284967, -0.152622, -0.160361, -0.368807, 0.202212, 0.075366, 0.568041, 40.509631, -19.856329, 40.094387, 0.610908, 29.920818],
    [-0.502258, 0.190676, -0.083494, -0.227717, -0.129915, -0.262733, 40.956955, -0.178343, 59.845792, -0.236978, 39.444565, 9.483651],
    [-0.109559, 0.037783, -0.416891, -0.083777, -0.373929, -0.015640, -0.549951, 41.664843, -32.369376, 40.452247, -0.652831, 25.463031],
    [-0.099203, -0.005786, 0.543840, -0.065958, -0.096734, 0.114350, 41.545922, 0.945398, 51.184524, 0.539927, 40.363230, 16.106312],
    [-0.148149, 0.117616, 0.110352, 0.454858, 0.046109, 0.195835, 0.434458, 43.043140, -42.128518, 40.469244, -0.355499, 19.739926],
    [0.394062, 0.207446, 0.071433, 0.269820, -0.290841, -0.220423, 42.474810, -0.212959, 39.574428, -0.209864, 40.312820, 21.085045],
    [-0.096819, -0.260319, -0.550745, 0.142254, 0.400082, 0.586688, -0.732368, 44.055958, -50.806976, 39.143865, -0.006623, 13.160655],
    [-0.200538, 0.436351, 0.641208, 0.023691, -0.038096, 0.253161, 43.548121, -0.044602, 27.324372, 0.112230, 39.468728, 25.192120],
    [-0.479989, 0.472128, -0.813391, 0.086533, 0.111136, 0.138955, -0.142537, 44.263057, -55.622904, 39.600163, 0.324495, 6.591207],
    [0.432978, -0.026676, 0.515001, 0.186245, 0.005789, -0.059839, 43.101567, -0.006009, 14.435807, 0.747259, 40.582000, 27.070683],
    [-0.362746, -0.170732, -0.281211, 0.116368, -0.189950, 0.445249, -0.181294, 43.719908, -57.065991, 40.394596, -0.843223, -0.023727],
    [-0.218139, 0.657148, -0.512447, 0.122520, 0.062171, -0.080280, 43.974211, 0.078417, 0.465554, 0.018254, 39.559308, 28.702963],
    [0.179737, 0.212926, -0.145469, 0.435371, 0.226506, -0.028211, 0.593712, 43.340837, -54.995911, 39.542467, -0.465431, -6.985870],
    [-0.023143, -0.134794, 0.537504, 0.243376, -0.044283, -0.729691, 42.729669, -0.648893, -13.677686, -1.183397, 39.624717, 27.480120],
    [-0.061370, -0.511870, -0.370632, 0.275466, 0.463856, 0.444768, 0.323513, 42.590696, -50.429836, 39.176445, -0.180653, -13.983134],
    [-0.022402, -0.141487, -0.014577, -0.088865, -0.109999, -0.071995, 42.890855, 0.274678, -27.331128, 0.405520, 40.785830, 25.325442],
    [-0.039582, 0.213368, -0.084486, 0.451768, -0.270978, -0.244608, 0.100600, 42.751318, -41.312491, 40.154898, 0.183039, -20.668584],
    [-0.296303, -0.058178, 0.163359, -0.046662, 0.024070, -0.217300, 42.136437, -0.431483, -39.061229, -0.276745, 40.269112, 21.122523],
    [0.618733, -0.137175, 0.334409, -0.228092, 0.148799, -0.395300, -1.032738, 42.208932, -31.615809, 39.890957, 0.197599, -25.007573],
    [-0.108804, -0.187300, -0.267682, -0.565458, -0.032099, 0.544158, 42.166409, 0.476050, -50.445152, 0.311634, 39.611814, 16.685637],
    [-0.264405, -0.027222, -0.073886, 0.302247, 0.190415, 0.073070, -0.234439, 39.365136, -20.255775, 39.820217, 0.074473, -29.762795],
    [0.067625, 0.109738, 0.140883, -0.017115, -0.227622, 0.015561, 40.204098, -0.655281, -59.877179, 0.212919, 39.299467, 10.505155],
    [0.300798, -0.351977, -0.217807, -0.457966, -0.245052, 0.285158, 0.092813, 38.936784, -5.238855, 39.873122, 0.815411, -33.299098],
    [-0.505539, -0.128672, 0.145412, -0.377850, 0.374817, 0.169281, 37.970984, 0.112460, -66.569631, 0.244697, 39.843283, 3.293264],
    [-0.147465, 0.226226, -0.553037, 0.292027, 0.414746, 0.007249, 0.744218, 36.613217, 9.525818, 39.890402, -1.219928, -36.088129],
    [-0.406381, -0.015737, 0.695328, 0.055368, -0.032454, 0.200960, 36.522315, -0.165141, -70.492099, 0.610496, 39.697793, -5.074663],
    [-0.000992, 0.793273, 0.211772, -0.391640, -0.544236, 0.049395, 0.170394, 33.613064, 26.031083, 39.648232, -0.994725, -36.101378],
    [0.055158, 0.185594, -0.281269, -0.209858, 0.262278, 0.486582, 32.950549, 0.367134, -71.670793, -0.342432, 39.558737, -12.591270],
    [0.562276, -3.227872, -1.160100, -1.102807, 1.481366, -0.029364, -0.808403, 33.090790, 51.433279, 39.429963, 0.031948, -29.072923],
    [0.133500, 0.505797, 0.341343, -2.939956, -0.480080, -0.150672, 32.654318, 0.293686, -58.131519, -0.949947, 39.476939, -25.849589],
    [1.071494, -0.862693, -0.820016, -0.138807, -0.650177, 1.962918, -0.392807, 35.571634, 55.880774, 40.096975, -0.896931, -23.206301],
    [-2.614061, -0.509692, -2.571370, 0.360984, -0.442665, -1.002406, 35.100898, -0.325618, -49.037841, 0.025390, 39.973544, -28.001532],
    [0.694542, -1.216961, 0.326885, -1.655073, 1.263728, 0.111631, -0.151871, 37.867005, 57.219884, 40.029698, -0.409366, -19.992682],
    [-0.979065, 0.968776, 0.979865, 2.715873, 0.275657, -0.609042, 38.179037, 0.316336, -38.381676, 0.293976, 40.490871, -29.340477],
    [-0.390840, -0.910219, -0.600063, 0.574230, 1.606803, 1.285037, -1.036860, 40.783697, 55.621359, 40.018217, -0.281567, -14.052759],
    [-0.677967, 1.232225, 1.671069, 0.186330, 1.123253, 0.131417, 40.665764, 0.142238, -28.572774, -0.236434, 39.866135, -28.630767],
    [0.632404, 0.733962, 1.466298, -0.300755, -0.565385, -0.440810, -0.364453, 43.375275, 52.122203, 39.823980, 0.110416, -8.761202],
    [-0.040959, -1.853197, -1.008167, 0.599304, 0.800825, -0.089076, 44.275216, -0.573268, -18.219876, -0.771339, 39.868831, -25.529830],
    [-0.105892, -0.071245, 0.302135, 0.885570, -0.826646, 0.085214, -0.571088, 43.565821, 51.572435, 40.718211, 0.602714, 9.173860],
    [-2.372908, -0.410786, 1.056653, -0.229753, -0.455368, 1.978275, 44.309733, -0.273927, 18.342158, 0.039461, 39.556327, -25.432624],
    [0.246244, 0.519692, -0.670116, 0.566335, -1.072365, 1.856859, 0.221977, 40.695782, 55.588887, 40.213208, 0.013836, 14.906650],
    [-1.233384, -1.600122, 0.695406, -0.255379, 0.451361, -1.246022, 40.459715, -0.483164, 28.851354, -0.181514, 40.249440, -28.076317],
    [2.884456, 1.723414, -0.619101, -0.653903, -1.413898, -0.852750, 0.026720, 37.813053, 56.977125, 39.902050, 1.149994, 19.360899],
    [1.404368, -1.314233, -1.753726, -0.826937, -1.190831, -0.260198, 37.237574, -0.542639, 39.265767, 0.351290, 40.186512, -28.480755],
    [0.901155, -0.044774, -0.863186, -0.783320, 1.421068, 1.016062, 0.161284, 35.039175, 55.407038, 39.710459, -1.383408, 23.739459],
    [0.871930, -0.455295, 2.050564, -0.830631, -2.509432, 1.396357, 35.730609, 0.169067, 48.703470, 0.063691, 39.942332, -27.426435],
    [1.199671, -0.921571, 1.716319, 0.874076, -0.306007, -0.889293, -0.222811, 33.196706, 52.046378, 40.096437, -0.036636, 28.930204],
    [-1.111946, 0.322987, 0.938052, 0.568061, 0.492866, -0.345527, 32.593882, 0.149309, 57.417800, -0.335990, 39.174540, -26.105252],
    [-0.196765, -0.416156, -0.659019, 0.629221, -0.387995, 0.260798, -0.742146, 49.800102, 40.404965, 40.702943, -0.097461, -0.696814],
    [0.079799, -0.186678, 0.015866, 0.293279, -0.117454, -0.037288, 48.598841, 0.170988, -0.135883, 0.090086, 39.854472, -19.679222],
    [0.159311, -0.000662, -0.103826, 0.034573, -0.350910, 0.230881, 0.403869, 52.110722, 29.680666, 40.971797, -0.411689, 0.421321],
    [-0.032696, 0.373789, -0.572440, 0.543930, -0.064978, -0.138060, 51.764028, 0.026130, 0.295416, -0.010225, 39.795660, -14.188168],
    [-0.251663, 0.040733, -0.159218, 0.237157, 0.048742, -0.461261, -0.554813, 53.802844, 19.800693, 40.732275, 0.475363, 0.901811],
    [-0.538752, 0.453187, 0.623326, 0.359913, -0.297981, 0.185293, 52.964040, -0.603424, -0.313929, -0.404445, 39.402886, -9.609707],
    [-0.373559, 0.097023, -0.223388, -0.422326, -0.232137, -0.036365, 0.655556, 54.116402, 9.531312, 39.882222, -0.351091, -0.067106],
    [0.048173, 0.236388, 0.277748, 0.383973, 0.030098, 0.365002, 54.392715, -0.639811, 0.303620, 0.173075, 39.593877, -4.859426],
    [-0.332193, -0.056876, 0.329783, 0.117978, 0.504530, 0.297440, 0.162158, 54.867650, 0.772188, 39.555672, -0.046356, -5.538885],
    [0.030269, 0.241758, -0.051215, 0.061427, 0.097358, -0.189433, 54.057412, -0.507107, -11.708403, 1.130687, 39.385686, -0.362170],
    [-0.418436, 0.062084, 0.262670, -0.289843, 0.129985, 0.350611, -0.773490, 55.387851, -2.648815, 39.532725, -0.576597, -1.960184],
    [-0.092110, -0.225263, 0.271966, 0.040486, 0.001106, 0.262108, 55.763452, -0.611104, -5.672786, -0.537573, 40.293464, 0.730117],
    [-0.719057, -0.478078, 0.018241, 0.003475, -0.135600, -0.282366, -0.428091, 54.813961, -5.587424, 39.827418, -0.293131, -0.614594],
    [-0.252541, 0.334097, 0.091684, -0.554188, 0.194982, 0.186223, 54.823680, -0.046659, 0.540357, 0.064286, 40.893105, 2.729561],
    [0.370539, 0.613544, 0.066932, -0.152631, -0.377910, -0.123959, 0.067464, 53.888342, -1.624548, 40.640840, 0.364268, 2.962060],
    [0.661759, 0.286772, -0.327357, -0.499381, -0.185069, 0.311641, 53.869826, -1.020806, 5.895094, 0.649226, 39.735624, 0.457481],
    [0.212997, -0.632541, 0.222623, 0.152430, -0.777308, -0.118296, -0.406006, 54.284974, 0.751900, 39.953897, 0.145688, 6.106563],
    [-0.683131, -0.259986, 0.329484, 0.158440, -0.311908, 0.384207, 54.146366, 0.598135, 11.756244, 0.490613, 40.248408, -0.581882],
    [-1.940736, 0.746064, -3.156691, -0.732517, -0.864801, -0.699709, 0.254945, 43.482161, 32.957210, 39.689183, 0.021583, -21.858441],
    [-0.158710, -2.352227, -1.060010, -0.999939, 0.906566, 0.825359, 43.550468, 0.248719, -44.548724, 0.432457, 39.103714, -16.753864],
    [2.095684, -1.488957, -0.498936, 3.042149, -0.740263, 1.904955, -0.928948, 44.151808, 37.943500, 39.765130, 1.650938, -19.398245],
    [-2.137957, -0.862678, -1.266851, 2.138608, -0.529715, -1.525602, 44.186639, -0.145527, -37.434705, 0.250360, 39.857138, -19.576524],
    [-0.875667, 0.367690, 2.657485, -1.262526, 0.473369, -0.835068, -0.122676, 48.464457, 38.667353, 40.048668, 0.633037, -13.458287],
    [-0.707405, -0.807436, -0.247362, 0.191328, -0.569804, 0.629848, 48.441137, 0.205111, -25.366528, 0.433015, 40.563520, -18.682915],
    [0.224010, 0.075693, 3.396748, -1.910215, -0.904118, 0.996392, -0.954045, 49.280331, 34.649797, 40.184997, -0.766470, -9.801374],
    [-1.395593, -0.169623, 0.243322, -2.341866, -2.619544, -0.269753, 49.647831, -0.415813, -20.054780, 0.583246, 40.162582, -17.618212],
    [-0.067914, -1.324389, -0.652501, -1.193947, -0.449008, -0.324370, -1.062378, 49.879349, 28.833338, 40.361364, -0.142464, -13.876463],
    [0.489793, 1.668793, -0.108298, -0.665932, -0.545012, -1.540542, 49.330264, 0.007915, -26.114222, 0.543299, 38.694519, -15.272197],
    [0.142757, 1.655973, 1.840615, 0.424777, -0.570506, -0.109813, -0.280390, 46.158270, 29.565930, 40.038923, 0.673400, -19.981273],
    [-0.399473, 1.205907, 1.190840, 0.463304, 0.471733, -1.263776, 46.471555, 0.859388, -37.716737, 0.991777, 39.636783, -14.712788],
    [0.148524, 0.916753, -0.789160, 1.213984, -0.190010, 0.108174, 0.483272, 49.371546, 33.911243, 39.899659, -0.345667, 10.063955],
    [1.409115, 1.032811, -1.249266, 1.007118, 0.339760, -1.992817, 49.072289, 0.954678, 20.238616, 0.578173, 40.116462, -17.448850],
    [1.805752, 1.938184, 0.866663, 0.523290, -0.748013, -0.367118, -0.130857, 48.346294, 38.525408, 39.229701, 0.334115, 12.516002],
    [-1.339951, -0.552108, -1.032477, 0.375640, 0.432439, 0.484437, 47.471465, -0.576164, 25.066797, -0.790090, 40.032524, -19.111287],
    [-0.038201, 1.188417, -1.497311, -1.724925, -0.481603, 2.296885, -0.616315, 44.343690, 38.315936, 39.187487, 0.249336, 19.012569],
    [0.322528, -1.669225, -0.251462, 1.013591, 0.692079, -2.746543, 44.216942, -0.458951, 37.828280, 0.166811, 40.231170, -18.298925],
    [0.548245, -0.833080, 0.439228, 3.523183, 1.052833, -2.606824, 0.121368, 43.573227, 34.293720, 39.710441, 0.530895, 22.137469],
    [0.631602, -1.075632, -1.290760, -0.134872, 1.415112, -0.620741, 42.961380, 0.725118, 44.635830, 0.248133, 40.220249, -17.203742],
    [0.297364, -0.095725, 1.244054, -1.112076, -1.405619, -0.646837, 0.134058, 46.848984, 29.731076, 40.444694, 0.581696, 18.866838],
    [1.135478, -0.874051, -0.083055, -1.211430, -0.549011, 0.362332, 45.778883, -1.090294, 37.657596, -0.529625, 40.413213, -15.002717],
    [-0.935699, 0.520199, 0.806834, 0.621916, 0.975111, 0.332698, -0.062601, 50.196489, 29.970697, 40.417929, -1.021773, 13.038264],
    [1.058704, -0.398509, 2.285708, 1.019120, 0.265231, 1.667215, 49.707516, -0.271710, 26.439692, 0.635838, 39.933798, -15.200794],
    [-0.106909, 1.927906, -0.154739, 2.253721, 4.957320, -0.816981, -1.099611, 49.333497, -33.340959, 40.418296, 0.158102, -12.640342],
    [1.330627, -0.585334, 4.441969, 0.634430, -0.641585, -1.483988, 49.209109, 0.118814, -24.222176, 0.634902, 39.717688, 17.001945],
    [-2.674470, -0.619511, 0.080840, 3.688581, 1.249800, -0.141603, 0.181605, 50.188871, -26.541588, 39.938975, 0.220014, -10.948848],
    [-0.671948, -0.609163, -1.525493, 1.137002, 2.902276, 2.323343, 50.556129, -1.414941, -20.793441, 0.086746, 39.842090, 13.751325],
    [2.774210, 0.701518, 1.016594, -0.399159, 1.307179, 0.766660, -0.299339, 52.300509, -23.443752, 41.445441, -0.459851, -5.675200],
    [0.547434, 4.579597, -1.720154, -0.314224, -1.231712, 0.526553, 52.848481, -0.100751, -11.197642, -0.067780, 39.763873, 11.861289],
    [-1.723249, -3.526762, -0.789927, -2.347787, 3.156654, 0.269100, -0.027417, 53.423892, -22.030471, 39.684462, -0.451589, -0.082676],
    [-1.014268, 1.913486, 2.840332, -1.439539, -4.141121, -2.535847, 53.343682, 0.249914, -0.261851, 0.532825, 39.687139, 10.736779],
    [-1.823030, -1.080102, 0.673006, -1.115634, 2.628437, 0.543318, -0.425044, 52.262778, -23.889855, 40.137255, 0.965592, 6.687931],
    [2.336618, 1.525003, -1.549516, -1.968116, 2.874999, 2.830522, 53.445439, -0.332754, 12.424121, -0.093078, 40.211972, 12.137114],
    [2.555620, 0.192232, -0.711811, -2.765397, -0.540691, 0.064990, 0.194005, 50.634313, -27.779078, 39.905227, -0.088194, 10.173103],
    [-0.887926, 1.422382, 1.455213, -0.992794, -1.961115, 2.376492, 51.361133, -1.142363, 20.146553, -0.520896, 40.247363, 13.053819],
    [1.198096, -0.751027, 1.816054, 0.066587, 1.342138, 0.089150, -0.420425, 48.966010, -32.145464, 41.078729, 0.432865, 11.024346],
    [4.459846, 0.129745, 1.007220, -3.167041, 4.958204, 1.468805, 48.646470, -0.294186, 23.433865, 0.382719, 40.468714, 16.392961],
    [-3.271462, -0.742245, 0.500884, -0.553515, 2.392195, 3.259042, 0.323009, 47.923806, -37.724480, 40.387627, -0.517533, 10.351779],
    [-1.067928, 3.024348, 2.587723, 0.224194, -1.568014, 0.064252, 48.280371, 0.352675, 21.077675, -0.584527, 39.846882, 18.399493],
    [-0.146863, -2.615280, -0.411441, 0.871504, 0.460963, 2.658834, 0.201183, 48.409874, -41.669456, 40.889067, 0.156352, 5.669105],
    [3.451694, -1.138106, -0.538014, 0.758447, 4.929788, 2.216737, 47.887128, 0.166413, 11.722282, 0.401091, 39.597506, 20.777258],
    [-2.229261, -1.636120, 0.864013, -0.417411, -2.367873, -1.058692, 0.684396, 47.503023, -42.689587, 40.727669, 0.143008, -0.530704],
    [3.073054, 1.813964, 0.701034, -3.109840, -4.744814, 0.850302, 48.577311, 0.527458, 0.690993, -1.271278, 40.329778, 21.467388],
    [1.213984, 0.000040, 2.462998, 2.258806, -1.585589, -2.581597, -0.160749, 48.469054, -40.097566, 39.358080, 0.422688, -5.624129],
    [-2.326638, -2.670515, -0.560769, -1.777568, 1.097605, 2.905782, 49.301139, 0.345054, -11.716950, -0.131293, 39.677517, 20.453040],
    [0.240163, -1.057074, 0.619226, -1.533689, -1.593030, 1.555346, 0.590843, 48.825449, -37.548488, 39.596441, 0.336982, -10.065467],
    [2.162271, 0.260266, 0.979368, -0.564245, -4.108764, 2.283688, 48.161154, -0.483983, -20.684024, -0.019683, 40.693857, 20.095624],
    [3.519264, -2.808603, -2.168966, -1.115217, -0.931084, 2.452598, 0.902793, 49.699215, -32.873331, 40.893366, 0.563389, -7.509550],
    [1.472075, 1.367589, -2.433835, 2.876711, 0.297006, -3.256850, 51.086776, 0.303532, -14.408898, 1.229798, 40.048721, 15.983655],
    [-2.336721, 2.438387, 0.462165, 1.838903, 2.856833, 1.719559, 0.218280, 51.614230, -28.855341, 40.772418, -0.487253, -5.263152],
    [1.699879, 0.659509, -3.242805, -0.061306, 2.245347, -0.184284, 51.119967, -0.099367, -10.129006, 0.606595, 40.191061, 14.958249],
    [2.297060, 0.306440, 0.414082, 1.360504, -1.720539, 1.461736, -0.305052, 52.350376, -27.548308, 40.247352, 0.181886, -0.435909],
    [0.747293, 1.429169, 3.845453, 1.608446, 4.641849, -0.590470, 51.220135, -0.287158, -0.348088, 0.588111, 40.092589, 13.329850],
    [-1.034648, -2.473199, -0.375424, -0.449034, 0.919716, 0.200158, 0.883737, 51.494469, -29.095989, 40.273116, 0.345440, 4.113329],
    [-2.930374, 0.118898, 2.757556, -0.946415, -3.226227, 0.264931, 51.103387, 1.128724, 9.200594, 0.677438, 39.735491, 14.508011],
    [1.772399, 1.593751, -1.628957, 2.695118, -0.760760, -1.206206, 0.553397, 50.391990, -32.108097, 39.695652, -0.099613, 7.338192],
    [3.777639, 0.842627, 0.453624, -0.520985, 0.127124, -1.018909, 50.095353, -0.719881, 13.890367, 0.632509, 40.452407, 15.564377],
    [1.825623, -0.888014, 0.188047, 2.886786, -0.153907, -1.401295, 0.234136, 50.153923, -34.513236, 40.258817, 0.277410, 4.159716],
    [-2.935043, -0.547762, -0.755699, -1.384766, 3.471565, 2.859572, 50.490693, 0.536343, 9.355983, 0.089825, 39.365037, 17.747672],
    [2.306202, 2.157552, -2.566139, 2.621912, 4.130729, 0.579889, -0.665827, 50.136878, -35.378868, 40.163971, -0.375538, 0.363423],
    [-1.638070, -2.319476, -4.202013, 0.804587, 1.546285, -0.498038, 50.308705, 0.518615, 0.848738, 0.385693, 40.293169, 17.430389],
    [-2.632640, -0.158039, -2.753723, 0.367307, 0.930252, -3.899125, 0.097557, 50.052933, -34.687375, 40.486575, 0.306025, -5.308958],
    [-1.466757, 0.024936, 2.809146, 0.344947, -0.267269, 2.770900, 49.910819, -0.141488, -10.387726, 0.818906, 40.625678, 18.230267],
];
