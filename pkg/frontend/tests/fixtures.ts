// Generated from the engine's shipped default score table; do not edit.
export const RDS_ROWS = [
 {
  "n": 0,
  "n_tox": 0,
  "n_eff": 0,
  "rds": 24,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 0,
  "n_eff": 0,
  "rds": 13,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 0,
  "n_eff": 1,
  "rds": 22,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 0,
  "n_eff": 2,
  "rds": 31,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 0,
  "n_eff": 3,
  "rds": 38,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 1,
  "n_eff": 0,
  "rds": 9,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 1,
  "n_eff": 1,
  "rds": 17,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 1,
  "n_eff": 2,
  "rds": 25,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 1,
  "n_eff": 3,
  "rds": 33,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 2,
  "n_eff": 0,
  "rds": 4,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 2,
  "n_eff": 1,
  "rds": 11,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 2,
  "n_eff": 2,
  "rds": 19,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 2,
  "n_eff": 3,
  "rds": 29,
  "eliminated": false
 },
 {
  "n": 3,
  "n_tox": 3,
  "n_eff": 0,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 3,
  "n_tox": 3,
  "n_eff": 1,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 3,
  "n_tox": 3,
  "n_eff": 2,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 3,
  "n_tox": 3,
  "n_eff": 3,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 0,
  "n_eff": 0,
  "rds": 7,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 0,
  "n_eff": 1,
  "rds": 14,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 0,
  "n_eff": 2,
  "rds": 20,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 0,
  "n_eff": 3,
  "rds": 27,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 0,
  "n_eff": 4,
  "rds": 34,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 0,
  "n_eff": 5,
  "rds": 39,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 0,
  "n_eff": 6,
  "rds": 41,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 1,
  "n_eff": 0,
  "rds": 5,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 1,
  "n_eff": 1,
  "rds": 10,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 1,
  "n_eff": 2,
  "rds": 16,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 1,
  "n_eff": 3,
  "rds": 23,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 1,
  "n_eff": 4,
  "rds": 30,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 1,
  "n_eff": 5,
  "rds": 36,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 1,
  "n_eff": 6,
  "rds": 40,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 2,
  "n_eff": 0,
  "rds": 2,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 2,
  "n_eff": 1,
  "rds": 6,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 2,
  "n_eff": 2,
  "rds": 12,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 2,
  "n_eff": 3,
  "rds": 18,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 2,
  "n_eff": 4,
  "rds": 26,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 2,
  "n_eff": 5,
  "rds": 32,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 2,
  "n_eff": 6,
  "rds": 37,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 3,
  "n_eff": 0,
  "rds": 1,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 3,
  "n_eff": 1,
  "rds": 3,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 3,
  "n_eff": 2,
  "rds": 7,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 3,
  "n_eff": 3,
  "rds": 14,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 3,
  "n_eff": 4,
  "rds": 20,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 3,
  "n_eff": 5,
  "rds": 27,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 3,
  "n_eff": 6,
  "rds": 34,
  "eliminated": false
 },
 {
  "n": 6,
  "n_tox": 4,
  "n_eff": 0,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 4,
  "n_eff": 1,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 4,
  "n_eff": 2,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 4,
  "n_eff": 3,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 4,
  "n_eff": 4,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 4,
  "n_eff": 5,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 4,
  "n_eff": 6,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 5,
  "n_eff": 0,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 5,
  "n_eff": 1,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 5,
  "n_eff": 2,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 5,
  "n_eff": 3,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 5,
  "n_eff": 4,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 5,
  "n_eff": 5,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 5,
  "n_eff": 6,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 6,
  "n_eff": 0,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 6,
  "n_eff": 1,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 6,
  "n_eff": 2,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 6,
  "n_eff": 3,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 6,
  "n_eff": 4,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 6,
  "n_eff": 5,
  "rds": null,
  "eliminated": true
 },
 {
  "n": 6,
  "n_tox": 6,
  "n_eff": 6,
  "rds": null,
  "eliminated": true
 }
] as const;

export const RDS_CSV = "n,n_tox,n_eff,rds_or_E\n0,0,0,24\n3,0,0,13\n3,0,1,22\n3,0,2,31\n3,0,3,38\n3,1,0,9\n3,1,1,17\n3,1,2,25\n3,1,3,33\n3,2,0,4\n3,2,1,11\n3,2,2,19\n3,2,3,29\n3,3,0,E\n3,3,1,E\n3,3,2,E\n3,3,3,E\n6,0,0,7\n6,0,1,14\n6,0,2,20\n6,0,3,27\n6,0,4,34\n6,0,5,39\n6,0,6,41\n6,1,0,5\n6,1,1,10\n6,1,2,16\n6,1,3,23\n6,1,4,30\n6,1,5,36\n6,1,6,40\n6,2,0,2\n6,2,1,6\n6,2,2,12\n6,2,3,18\n6,2,4,26\n6,2,5,32\n6,2,6,37\n6,3,0,1\n6,3,1,3\n6,3,2,7\n6,3,3,14\n6,3,4,20\n6,3,5,27\n6,3,6,34\n6,4,0,E\n6,4,1,E\n6,4,2,E\n6,4,3,E\n6,4,4,E\n6,4,5,E\n6,4,6,E\n6,5,0,E\n6,5,1,E\n6,5,2,E\n6,5,3,E\n6,5,4,E\n6,5,5,E\n6,5,6,E\n6,6,0,E\n6,6,1,E\n6,6,2,E\n6,6,3,E\n6,6,4,E\n6,6,5,E\n6,6,6,E\n";
