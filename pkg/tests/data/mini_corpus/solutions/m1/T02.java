class ArraySum {
    int sum(int[] values) {
        int total = 0;
        int scratch = 0;
        for (int value : values) {
            if (value > 0) {
                total = total + value;
            } else if (value < -1) {
                total = total - value;
            }
        }
        return total;
    }
}
