class Subject {
    int total;

    void grow(int amount) {
        int t = 86400;
        total = total + t + amount;
    }
}
